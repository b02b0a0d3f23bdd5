#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "citespectro/disambiguation.hpp"
#include "citespectro/reference.hpp"

namespace citespectro {

// Yearly citation counts of one cited work.
struct Trajectory {
  std::string target;  // canonical reference string
  int publication_year = 0;
  std::map<int, long long> yearly_counts;  // calendar year -> citations
  long long total = 0;
};

// Every matching reference occurrence counts once. Years from publication
// to the latest citing year in the corpus are present, zeros included.
// Throws InvalidArgument for an empty cluster or one without a year.
Trajectory build_trajectory(const ReferenceIndex& index, const RefCluster& cluster);
std::vector<Trajectory> build_trajectories(const ReferenceIndex& index, std::span<const RefCluster> clusters);

enum class TrajectoryLabel { Transitory, Sticky, Flat };
std::string_view to_string(TrajectoryLabel label);

struct TrajectoryThresholds {
  long long min_total = 10;
  // Transitory: share of citations in years 1..5 after publication, and
  // the latest allowed offset of the peak year.
  double early_share = 0.5;
  int max_peak_offset = 5;
  // Sticky: share arriving more than onset_years after publication ...
  int onset_years = 8;
  double late_share = 0.6;
  // ... or the final third of the span outpacing the first third.
  double growth_factor = 2.0;
};

struct TrajectoryClass {
  TrajectoryLabel label = TrajectoryLabel::Flat;
  double early_share_2yr = 0;  // citations 1-2 years after publication / total
  double early_share_5yr = 0;  // 1-5 years
  int peak_year_offset = 0;
  bool late_onset = false;
  double growth_ratio = 0;  // mean yearly count, last third over first third
};

TrajectoryClass classify_trajectory(const Trajectory& t, const TrajectoryThresholds& thresholds = {});

struct PolynomialFit {
  std::vector<double> coefficients;  // ascending powers of (year - publication_year)
  double residual_sum_of_squares = 0;
  std::vector<double> fitted;  // per input point, clamped at zero
};

// Least squares in powers of x. Needs at least order + 1 distinct x values,
// else throws InsufficientData.
PolynomialFit fit_polynomial(std::span<const double> x, std::span<const double> y, int order);
PolynomialFit fit_polynomial(const Trajectory& t, int order = 5);

// "target,rpy,year,count,label" for the top_n trajectories by total.
std::string trajectory_table(const ReferenceIndex& index, std::span<const RefCluster> clusters, std::size_t top_n,
                             const TrajectoryThresholds& thresholds = {});

}  // namespace citespectro
