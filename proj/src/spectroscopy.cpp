#include "citespectro/spectroscopy.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "citespectro/csv.hpp"
#include "citespectro/error.hpp"
#include "citespectro/text.hpp"

namespace citespectro {

std::vector<double> moving_median(std::span<const long long> counts, int window) {
  if (counts.empty()) throw EmptyInput("moving median of an empty series");
  if (window < 1 || window % 2 == 0) throw InvalidArgument(fmt::format("window {} must be odd and positive", window));
  const auto n = static_cast<std::ptrdiff_t>(counts.size());
  const std::ptrdiff_t half = (window - 1) / 2;
  std::vector<double> medians(counts.size());
  std::vector<long long> buf;
  buf.reserve(static_cast<std::size_t>(window));
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
    std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half);
    buf.assign(counts.begin() + lo, counts.begin() + hi + 1);
    auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
    std::nth_element(buf.begin(), mid, buf.end());
    if (buf.size() % 2 == 1) {
      medians[static_cast<std::size_t>(i)] = static_cast<double>(*mid);
    } else {
      long long upper = *mid;
      long long lower = *std::max_element(buf.begin(), mid);
      medians[static_cast<std::size_t>(i)] = (static_cast<double>(lower) + static_cast<double>(upper)) / 2.0;
    }
  }
  return medians;
}

std::vector<double> moving_median_deviation(std::span<const long long> counts, int window) {
  std::vector<double> out = moving_median(counts, window);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(counts[i]) - out[i];
  return out;
}

std::vector<double> rank_transform(std::span<const double> row) {
  const std::size_t n = row.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && row[order[j + 1]] == row[order[i]]) ++j;
    // positions i..j hold ranks i+1..j+1
    double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

bool RpysCurve::is_peak(int rpy) const { return std::binary_search(peaks.begin(), peaks.end(), rpy); }

RpysCurve rpys_from_counts(YearRange range, std::vector<long long> counts, const RpysOptions& options) {
  if (range.lo > range.hi) throw InvalidArgument(fmt::format("RPY range [{}, {}] is empty", range.lo, range.hi));
  if (counts.size() != static_cast<std::size_t>(range.width())) {
    throw InvalidArgument("count vector does not match the RPY range");
  }
  RpysCurve curve;
  curve.range = range;
  curve.medians = moving_median(counts, options.window);
  curve.deviations.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) curve.deviations[i] = static_cast<double>(counts[i]) - curve.medians[i];
  curve.counts = std::move(counts);

  const auto& d = curve.deviations;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > options.peak_min_deviation)) continue;
    bool left = i == 0 || d[i] > d[i - 1];
    bool right = i + 1 == d.size() || d[i] > d[i + 1];
    if (left && right) curve.peaks.push_back(range.lo + static_cast<int>(i));
  }
  return curve;
}

YearRange default_rpy_range(const ReferenceIndex& index) {
  auto span = index.corpus().citing_year_span();
  if (!span) throw EmptyCorpus("corpus has no records");
  int lo = span->hi;
  for (std::size_t i = 0; i < index.unique_refs().size(); ++i) {
    const auto& r = index.unique_refs()[i];
    if (r.rpy && index.occurrences()[i] > 0) lo = std::min(lo, *r.rpy);
  }
  return {lo, span->hi};
}

namespace {

YearRange resolve_range(const ReferenceIndex& index, std::optional<YearRange> range) {
  if (index.corpus().empty()) throw EmptyCorpus("corpus has no records");
  YearRange r = range ? *range : default_rpy_range(index);
  if (r.lo > r.hi) throw InvalidArgument(fmt::format("RPY range [{}, {}] is empty", r.lo, r.hi));
  return r;
}

}  // namespace

RpysCurve rpys(const ReferenceIndex& index, std::optional<YearRange> range, const RpysOptions& options) {
  YearRange r = resolve_range(index, range);
  std::vector<long long> counts(static_cast<std::size_t>(r.width()), 0);
  if (options.use_clusters) {
    for (const auto& c : cluster_index(index, options.clustering)) {
      if (c.canonical.rpy && r.contains(*c.canonical.rpy)) {
        counts[static_cast<std::size_t>(*c.canonical.rpy - r.lo)] += static_cast<long long>(c.n_cr);
      }
    }
  } else {
    for (std::size_t i = 0; i < index.unique_refs().size(); ++i) {
      const auto& ref = index.unique_refs()[i];
      if (ref.rpy && r.contains(*ref.rpy)) {
        counts[static_cast<std::size_t>(*ref.rpy - r.lo)] += static_cast<long long>(index.occurrences()[i]);
      }
    }
  }
  return rpys_from_counts(r, std::move(counts), options);
}

RpysCurve rpys(const Corpus& corpus, std::optional<YearRange> range, const RpysOptions& options) {
  ReferenceIndex index(corpus);
  return rpys(index, range, options);
}

MultiRpysMatrix multi_rpys(const ReferenceIndex& index, std::optional<YearRange> range, int window) {
  YearRange r = resolve_range(index, range);
  auto span = *index.corpus().citing_year_span();

  MultiRpysMatrix m;
  m.range = r;
  const auto width = static_cast<std::size_t>(r.width());
  for (int y = span.lo; y <= span.hi; ++y) m.citing_years.push_back(y);
  m.raw.assign(m.citing_years.size(), std::vector<long long>(width, 0));

  const auto& records = index.corpus().records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& row = m.raw[static_cast<std::size_t>(records[i].citing_year - span.lo)];
    for (auto id : index.refs_of(i)) {
      const auto& ref = index.ref(id);
      if (ref.rpy && r.contains(*ref.rpy)) ++row[static_cast<std::size_t>(*ref.rpy - r.lo)];
    }
  }
  m.ranked.reserve(m.raw.size());
  for (const auto& row : m.raw) {
    auto dev = moving_median_deviation(row, window);
    m.ranked.push_back(rank_transform(dev));
  }
  return m;
}

MultiRpysMatrix multi_rpys(const Corpus& corpus, std::optional<YearRange> range, int window) {
  ReferenceIndex index(corpus);
  return multi_rpys(index, range, window);
}

std::string curve_csv(const RpysCurve& curve) {
  std::string out = "rpy,count,median,deviation,is_peak\n";
  for (std::size_t i = 0; i < curve.counts.size(); ++i) {
    int year = curve.range.lo + static_cast<int>(i);
    out += fmt::format("{},{},{},{},{}\n", year, curve.counts[i], curve.medians[i], curve.deviations[i],
                       curve.is_peak(year) ? "true" : "false");
  }
  return out;
}

std::string matrix_csv(const MultiRpysMatrix& matrix) {
  std::string out = "citing_year,rpy,count,rank\n";
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      out += fmt::format("{},{},{},{}\n", matrix.citing_years[r], matrix.range.lo + static_cast<int>(c),
                         matrix.raw[r][c], matrix.ranked[r][c]);
    }
  }
  return out;
}

MultiRpysMatrix parse_matrix_csv(std::string_view text_in) {
  auto rows = csv::parse(text_in);
  if (rows.empty() || rows[0] != csv::Row{"citing_year", "rpy", "count", "rank"}) {
    throw MalformedFile("matrix CSV: expected header citing_year,rpy,count,rank");
  }
  struct Cell {
    int year, rpy;
    long long count;
    double rank;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 4) throw MalformedFile(fmt::format("matrix CSV line {}: expected 4 fields", i + 1));
    auto year = text::parse_int(row[0]);
    auto rpy = text::parse_int(row[1]);
    auto count = text::parse_int(row[2]);
    double rank = 0;
    try {
      rank = std::stod(row[3]);
    } catch (const std::exception&) {
      throw MalformedFile(fmt::format("matrix CSV line {}: bad rank", i + 1));
    }
    if (!year || !rpy || !count) throw MalformedFile(fmt::format("matrix CSV line {}: bad integer", i + 1));
    cells.push_back({static_cast<int>(*year), static_cast<int>(*rpy), *count, rank});
  }
  if (cells.empty()) throw MalformedFile("matrix CSV has no cells");

  MultiRpysMatrix m;
  auto [ylo, yhi] = std::minmax_element(cells.begin(), cells.end(), [](auto& a, auto& b) { return a.year < b.year; });
  auto [rlo, rhi] = std::minmax_element(cells.begin(), cells.end(), [](auto& a, auto& b) { return a.rpy < b.rpy; });
  m.range = {rlo->rpy, rhi->rpy};
  for (int y = ylo->year; y <= yhi->year; ++y) m.citing_years.push_back(y);
  m.raw.assign(m.rows(), std::vector<long long>(m.cols(), 0));
  m.ranked.assign(m.rows(), std::vector<double>(m.cols(), 0.0));
  for (const auto& c : cells) {
    auto r = static_cast<std::size_t>(c.year - ylo->year);
    auto k = static_cast<std::size_t>(c.rpy - rlo->rpy);
    m.raw[r][k] = c.count;
    m.ranked[r][k] = c.rank;
  }
  return m;
}

std::size_t heatmap_bin(double rank, std::size_t width) {
  if (width == 0) return 0;
  double q = (rank - 0.5) / static_cast<double>(width);
  auto bin = static_cast<long long>(q * 5.0);
  return static_cast<std::size_t>(std::clamp<long long>(bin, 0, 4));
}

namespace {
constexpr int kCellW = 8;
constexpr int kCellH = 12;
constexpr int kLeft = 56;
constexpr int kTop = 24;
constexpr int kBottom = 40;
constexpr int kLegendW = 110;
}  // namespace

std::string render_heatmap_svg(const MultiRpysMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw InvalidArgument("cannot render an empty matrix");
  const int grid_w = static_cast<int>(m.cols()) * kCellW;
  const int grid_h = static_cast<int>(m.rows()) * kCellH;
  const int width = kLeft + grid_w + 16 + kLegendW;
  const int height = std::max(kTop + grid_h + kBottom, kTop + 5 * 16 + kBottom);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"10\">\n",
      width, height, width, height);
  out += fmt::format("<title>Multi-RPYS heatmap (rank transformed), RPY {}-{}</title>\n", m.range.lo, m.range.hi);

  // Rows top to bottom in ascending citing year.
  out += "<g id=\"cells\">\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out += fmt::format("<rect class=\"cell\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                         kLeft + static_cast<int>(c) * kCellW, kTop + static_cast<int>(r) * kCellH, kCellW, kCellH,
                         kHeatmapColors[heatmap_bin(m.ranked[r][c], m.cols())]);
    }
  }
  out += "</g>\n";

  out += "<g id=\"row-labels\" text-anchor=\"end\">\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += fmt::format("<text class=\"row-label\" x=\"{}\" y=\"{}\">{}</text>\n", kLeft - 4,
                       kTop + static_cast<int>(r) * kCellH + kCellH - 2, m.citing_years[r]);
  }
  out += "</g>\n";

  out += "<g id=\"col-labels\" text-anchor=\"middle\">\n";
  for (std::size_t c = 0; c < m.cols(); ++c) {
    int year = m.range.lo + static_cast<int>(c);
    if (year % 10 != 0) continue;
    int x = kLeft + static_cast<int>(c) * kCellW + kCellW / 2;
    out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\"/>\n", x, kTop + grid_h, x,
                       kTop + grid_h + 4);
    out += fmt::format("<text class=\"col-label\" x=\"{}\" y=\"{}\">{}</text>\n", x, kTop + grid_h + 14, year);
  }
  out += "</g>\n";
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">Referenced publication year</text>\n",
                     kLeft + grid_w / 2, kTop + grid_h + 30);
  out += fmt::format("<text x=\"12\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 12 {})\">Citing year</text>\n",
                     kTop + grid_h / 2, kTop + grid_h / 2);

  const int lx = kLeft + grid_w + 16;
  out += "<g id=\"legend\">\n";
  out += fmt::format("<text x=\"{}\" y=\"{}\">Rank quantile</text>\n", lx, kTop - 6);
  for (int b = 0; b < 5; ++b) {
    int y = kTop + (4 - b) * 16;
    out += fmt::format("<rect class=\"legend\" x=\"{}\" y=\"{}\" width=\"14\" height=\"14\" fill=\"{}\"/>\n", lx, y,
                       kHeatmapColors[b]);
    out += fmt::format("<text x=\"{}\" y=\"{}\">{}-{}%</text>\n", lx + 20, y + 11, b * 20, (b + 1) * 20);
  }
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

std::string render_curve_svg(const RpysCurve& curve) {
  constexpr int kStep = 6, kPlotH = 160;
  const int n = static_cast<int>(curve.deviations.size());
  const int width = kLeft + std::max(1, n) * kStep + 20;
  const int height = kTop + kPlotH + kBottom;
  double lo = 0, hi = 0;
  for (double d : curve.deviations) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (hi == lo) hi = lo + 1;
  auto ypos = [&](double d) { return kTop + static_cast<int>((hi - d) / (hi - lo) * kPlotH); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"10\">\n",
      width, height, width, height);
  out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999999\"/>\n", kLeft, ypos(0),
                     kLeft + n * kStep, ypos(0));
  out += "<polyline fill=\"none\" stroke=\"#08306b\" points=\"";
  for (int i = 0; i < n; ++i) {
    if (i > 0) out += ' ';
    out += fmt::format("{},{}", kLeft + i * kStep, ypos(curve.deviations[static_cast<std::size_t>(i)]));
  }
  out += "\"/>\n";
  for (int p : curve.peaks) {
    int i = p - curve.range.lo;
    out += fmt::format("<circle class=\"peak\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#cb181d\"/>\n", kLeft + i * kStep,
                       ypos(curve.deviations[static_cast<std::size_t>(i)]));
  }
  for (int i = 0; i < n; ++i) {
    int year = curve.range.lo + i;
    if (year % 10 != 0) continue;
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", kLeft + i * kStep,
                       kTop + kPlotH + 14, year);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace citespectro
