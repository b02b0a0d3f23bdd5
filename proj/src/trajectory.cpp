#include "citespectro/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <unordered_map>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "citespectro/csv.hpp"
#include "citespectro/error.hpp"

namespace citespectro {

std::string_view to_string(TrajectoryLabel label) {
  switch (label) {
    case TrajectoryLabel::Transitory: return "transitory";
    case TrajectoryLabel::Sticky: return "sticky";
    case TrajectoryLabel::Flat: return "flat";
  }
  return "flat";
}

std::vector<Trajectory> build_trajectories(const ReferenceIndex& index, std::span<const RefCluster> clusters) {
  std::vector<Trajectory> out(clusters.size());
  struct Key {
    std::string_view raw;
    int rpy;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return std::hash<std::string_view>{}(k.raw) ^ (std::size_t(k.rpy) << 1); }
  };
  std::unordered_map<Key, std::size_t, KeyHash> owner;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto& cl = clusters[c];
    if (cl.variants.empty()) throw InvalidArgument("trajectory of an empty cluster");
    if (!cl.canonical.rpy) throw InvalidArgument("trajectory needs a cluster with a publication year");
    out[c].target = cl.canonical.raw;
    out[c].publication_year = *cl.canonical.rpy;
    for (const auto& v : cl.variants) {
      if (v.ref.rpy) owner.emplace(Key{v.ref.raw, *v.ref.rpy}, c);
    }
  }

  // the referenced unique ids map to clusters once, not per occurrence
  std::vector<long> cluster_of(index.unique_refs().size(), -1);
  for (std::size_t i = 0; i < index.unique_refs().size(); ++i) {
    const auto& r = index.unique_refs()[i];
    if (!r.rpy) continue;
    auto it = owner.find(Key{r.raw, *r.rpy});
    if (it != owner.end()) cluster_of[i] = static_cast<long>(it->second);
  }

  const auto& records = index.corpus().records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (auto id : index.refs_of(i)) {
      if (cluster_of[id] < 0) continue;
      auto& t = out[static_cast<std::size_t>(cluster_of[id])];
      ++t.yearly_counts[records[i].citing_year];
      ++t.total;
    }
  }

  int last_year = 0;
  if (auto span = index.corpus().citing_year_span()) last_year = span->hi;
  for (auto& t : out) {
    for (int y = t.publication_year; y <= last_year; ++y) t.yearly_counts.try_emplace(y, 0);
  }
  return out;
}

Trajectory build_trajectory(const ReferenceIndex& index, const RefCluster& cluster) {
  return build_trajectories(index, std::span<const RefCluster>(&cluster, 1)).front();
}

TrajectoryClass classify_trajectory(const Trajectory& t, const TrajectoryThresholds& th) {
  TrajectoryClass cls;
  const int pub = t.publication_year;
  long long early2 = 0, early5 = 0, late = 0, peak = -1;
  for (const auto& [year, count] : t.yearly_counts) {
    int offset = year - pub;
    if (offset >= 1 && offset <= 2) early2 += count;
    if (offset >= 1 && offset <= 5) early5 += count;
    if (offset > th.onset_years) late += count;
    if (count > peak) {
      peak = count;
      cls.peak_year_offset = offset;
    }
  }
  if (t.total > 0) {
    auto total = static_cast<double>(t.total);
    cls.early_share_2yr = static_cast<double>(early2) / total;
    cls.early_share_5yr = static_cast<double>(early5) / total;
    cls.late_onset = static_cast<double>(late) / total >= th.late_share;
  }

  // thirds of the span from publication to the last observed year
  bool growing = false;
  if (!t.yearly_counts.empty()) {
    const int last = t.yearly_counts.rbegin()->first;
    const int span = last - pub + 1;
    const int third = span / 3;
    if (third >= 1) {
      long long first_sum = 0, last_sum = 0;
      for (const auto& [year, count] : t.yearly_counts) {
        if (year >= pub && year < pub + third) first_sum += count;
        if (year > last - third) last_sum += count;
      }
      if (first_sum > 0) {
        cls.growth_ratio = static_cast<double>(last_sum) / static_cast<double>(first_sum);
        growing = cls.growth_ratio >= th.growth_factor;
      } else if (last_sum > 0) {
        cls.growth_ratio = HUGE_VAL;
        growing = true;
      }
    }
  }

  if (t.total < th.min_total) {
    cls.label = TrajectoryLabel::Flat;
  } else if (cls.early_share_5yr >= th.early_share && cls.peak_year_offset <= th.max_peak_offset) {
    cls.label = TrajectoryLabel::Transitory;
  } else if (cls.late_onset || growing) {
    cls.label = TrajectoryLabel::Sticky;
  } else {
    cls.label = TrajectoryLabel::Flat;
  }
  return cls;
}

PolynomialFit fit_polynomial(std::span<const double> x, std::span<const double> y, int order) {
  if (order < 0) throw InvalidArgument("polynomial order must be non-negative");
  if (x.size() != y.size()) throw InvalidArgument("x and y differ in length");
  std::set<double> distinct(x.begin(), x.end());
  if (distinct.size() < static_cast<std::size_t>(order) + 1) {
    throw InsufficientData(fmt::format("order {} fit needs {} distinct points, have {}", order, order + 1, distinct.size()));
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto m = static_cast<Eigen::Index>(order + 1);

  // Fit in x / scale to keep the Vandermonde matrix well conditioned.
  double scale = 0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0) scale = 1;

  Eigen::MatrixXd vander(n, m);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double t = x[static_cast<std::size_t>(i)] / scale;
    double p = 1;
    for (Eigen::Index k = 0; k < m; ++k) {
      vander(i, k) = p;
      p *= t;
    }
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd scaled = vander.colPivHouseholderQr().solve(rhs);

  PolynomialFit fit;
  fit.coefficients.resize(static_cast<std::size_t>(m));
  double factor = 1;
  for (Eigen::Index k = 0; k < m; ++k) {
    fit.coefficients[static_cast<std::size_t>(k)] = scaled(k) / factor;
    factor *= scale;
  }
  Eigen::VectorXd predicted = vander * scaled;
  fit.fitted.resize(x.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = rhs(i) - predicted(i);
    fit.residual_sum_of_squares += r * r;
    fit.fitted[static_cast<std::size_t>(i)] = std::max(0.0, predicted(i));
  }
  return fit;
}

PolynomialFit fit_polynomial(const Trajectory& t, int order) {
  std::vector<double> x, y;
  for (const auto& [year, count] : t.yearly_counts) {
    x.push_back(static_cast<double>(year - t.publication_year));
    y.push_back(static_cast<double>(count));
  }
  return fit_polynomial(x, y, order);
}

std::string trajectory_table(const ReferenceIndex& index, std::span<const RefCluster> clusters, std::size_t top_n,
                             const TrajectoryThresholds& thresholds) {
  std::vector<RefCluster> dated;
  for (const auto& c : clusters) {
    if (c.canonical.rpy && !c.variants.empty()) dated.push_back(c);
  }
  auto all = build_trajectories(index, dated);
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto key = [&](std::size_t i) {
    return std::make_tuple(-all[i].total, all[i].publication_year, std::string_view(all[i].target));
  };
  std::size_t take = std::min(top_n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

  std::string out = "target,rpy,year,count,label\n";
  for (std::size_t k = 0; k < take; ++k) {
    const auto& t = all[order[k]];
    auto label = to_string(classify_trajectory(t, thresholds).label);
    for (const auto& [year, count] : t.yearly_counts) {
      out += csv::join({t.target, std::to_string(t.publication_year), std::to_string(year), std::to_string(count),
                        std::string(label)});
      out += '\n';
    }
  }
  return out;
}

}  // namespace citespectro
