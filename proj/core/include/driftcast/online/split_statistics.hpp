#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace driftcast::online {

/// Weighted running mean and sum of squared deviations (West's update).
struct TargetStats {
  double weight = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double y, double w = 1.0);
  void merge(const TargetStats& other);
  /// Population variance.
  double variance() const { return weight > 0.0 ? m2 / weight : 0.0; }
  double stddev() const;

  nlohmann::json state() const { return {weight, mean, m2}; }
  static TargetStats from_state(const nlohmann::json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
  }
};

/// Merits closer than this are treated as equal and resolved by the lower
/// attribute index, then the lower threshold.
inline constexpr double kMeritTieTolerance = 1e-10;

/// Fraction of the parent's squared deviation removed by the split:
/// 1 - (SSE_left + SSE_right) / SSE_parent, in [0, 1].
double variance_reduction_merit(const TargetStats& left, const TargetStats& right);

struct SplitCandidate {
  int attribute = -1;
  double threshold = 0.0;  // x <= threshold goes left
  double merit = 0.0;
  TargetStats left;
  TargetStats right;
};

/// Per-attribute summary of (x, y) pairs for numeric split search.
///
/// Keeps at most `capacity` bins with disjoint, ordered x ranges. Each bin holds
/// exact target statistics for the values it absorbed, so a threshold placed
/// between two bins partitions the observed data exactly. When full, the
/// adjacent pair whose union spans the narrowest range is merged. Below
/// capacity every distinct x value owns a bin and the search is exhaustive.
class RangeHistogram {
 public:
  explicit RangeHistogram(std::size_t capacity = 64);

  void add(double x, double y, double w = 1.0);

  /// Midpoints between consecutive bins, ascending.
  std::vector<double> thresholds() const;
  /// Best merit over thresholds() with both sides weighing at least
  /// `min_branch_weight`. Ties keep the lowest threshold.
  std::optional<SplitCandidate> best_split(double min_branch_weight) const;

  std::size_t size() const { return bins_.size(); }
  TargetStats total() const;

  nlohmann::json state() const;
  static RangeHistogram from_state(const nlohmann::json& j);

 private:
  struct Bin {
    double lo;
    double hi;
    TargetStats stats;
  };
  std::vector<Bin> bins_;
  std::size_t capacity_;
};

/// Observers for the attributes a leaf is allowed to split on.
class AttributeObservers {
 public:
  AttributeObservers() = default;
  AttributeObservers(std::vector<int> features, std::size_t capacity);

  void add(std::span<const double> x, double y, double w = 1.0);

  /// Best candidate per observed attribute, ordered by attribute index.
  std::vector<SplitCandidate> best_per_attribute(double min_branch_weight) const;
  double weight() const { return weight_; }
  const std::vector<int>& features() const { return features_; }

  nlohmann::json state() const;
  static AttributeObservers from_state(const nlohmann::json& j);

 private:
  std::vector<int> features_;
  std::vector<RangeHistogram> histograms_;
  double weight_ = 0.0;
};

/// sqrt(R^2 ln(1/delta) / (2 n)).
double hoeffding_bound(double range, double delta, double n);

struct SplitDecision {
  std::optional<SplitCandidate> best;
  double second_merit = 0.0;
  double bound = 0.0;
  bool split = false;
};

/// Picks the highest-merit candidate (ties per kMeritTieTolerance) and applies
/// the Hoeffding test on normalised merits (range 1): split when the margin over
/// the runner-up (or the null split, merit 0) exceeds the bound, or the bound
/// has fallen below `tie_threshold`.
SplitDecision decide_split(std::span<const SplitCandidate> candidates, double n,
                           double split_confidence, double tie_threshold);

}  // namespace driftcast::online
