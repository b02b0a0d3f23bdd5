#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citespectro/corpus.hpp"
#include "citespectro/disambiguation.hpp"
#include "citespectro/reference.hpp"

namespace citespectro {

// Median of each centered window of `window` values; windows are truncated
// at the ends. Even-sized windows take the mean of the two middle values, so
// results are exact multiples of 0.5.
std::vector<double> moving_median(std::span<const long long> counts, int window = 5);

// counts[i] - moving_median(counts)[i]. Throws EmptyInput on an empty series
// and InvalidArgument on an even or non-positive window.
std::vector<double> moving_median_deviation(std::span<const long long> counts, int window = 5);

// Ascending ranks 1..n, ties get the mean of the ranks they cover.
std::vector<double> rank_transform(std::span<const double> row);

struct RpysOptions {
  int window = 5;
  // A peak is a strict local maximum whose deviation exceeds this.
  double peak_min_deviation = 0.0;
  // Count disambiguated clusters (sum of n_cr per canonical year) instead
  // of parsed references.
  bool use_clusters = false;
  ClusterOptions clustering;
};

struct RpysCurve {
  YearRange range;
  std::vector<long long> counts;  // index = rpy - range.lo
  std::vector<double> medians;
  std::vector<double> deviations;
  std::vector<int> peaks;  // ascending rpy

  long long count_at(int rpy) const { return counts.at(static_cast<std::size_t>(rpy - range.lo)); }
  double deviation_at(int rpy) const { return deviations.at(static_cast<std::size_t>(rpy - range.lo)); }
  bool is_peak(int rpy) const;
};

// Curve from per-year counts over `range` (counts.size() == range.width()).
RpysCurve rpys_from_counts(YearRange range, std::vector<long long> counts, const RpysOptions& options = {});

// Default range is [smallest referenced year, latest citing year]. Throws
// EmptyCorpus when there are no records, InvalidArgument when lo > hi.
RpysCurve rpys(const ReferenceIndex& index, std::optional<YearRange> range = std::nullopt,
               const RpysOptions& options = {});
RpysCurve rpys(const Corpus& corpus, std::optional<YearRange> range = std::nullopt, const RpysOptions& options = {});

// The range rpys() and multi_rpys() use when none is given.
YearRange default_rpy_range(const ReferenceIndex& index);

struct MultiRpysMatrix {
  std::vector<int> citing_years;  // ascending, contiguous
  YearRange range;
  std::vector<std::vector<long long>> raw;
  std::vector<std::vector<double>> ranked;

  std::size_t rows() const { return citing_years.size(); }
  std::size_t cols() const { return static_cast<std::size_t>(range.width()); }
};

// One RPYS row per citing year from the earliest to the latest in the corpus;
// each row's deviations are rank transformed on their own. Years without
// references yield all-tied rows.
MultiRpysMatrix multi_rpys(const ReferenceIndex& index, std::optional<YearRange> range = std::nullopt,
                           int window = 5);
MultiRpysMatrix multi_rpys(const Corpus& corpus, std::optional<YearRange> range = std::nullopt, int window = 5);

// "rpy,count,median,deviation,is_peak"
std::string curve_csv(const RpysCurve& curve);

// "citing_year,rpy,count,rank", long format sorted by (citing_year, rpy).
std::string matrix_csv(const MultiRpysMatrix& matrix);

// Inverse of matrix_csv. Throws MalformedFile.
MultiRpysMatrix parse_matrix_csv(std::string_view text);

// Five fill colors, lightest to darkest. A cell with rank r in a row of width
// W falls in bin floor(5 * (r - 0.5) / W).
inline constexpr std::string_view kHeatmapColors[5] = {"#f7fbff", "#c6dbef", "#6baed6", "#2171b5", "#08306b"};
std::size_t heatmap_bin(double rank, std::size_t width);

// Standalone SVG 1.1: x = RPY, y = citing year, one rect per cell, labels
// every 10 RPYs, legend on the right. Throws InvalidArgument when empty.
std::string render_heatmap_svg(const MultiRpysMatrix& matrix);

// Line chart of the deviation curve with peaks marked.
std::string render_curve_svg(const RpysCurve& curve);

}  // namespace citespectro
