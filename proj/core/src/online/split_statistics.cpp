#include "driftcast/online/split_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace driftcast::online {

void TargetStats::add(double y, double w) {
  if (w <= 0.0) return;
  const double new_weight = weight + w;
  const double delta = y - mean;
  mean += delta * w / new_weight;
  m2 += w * delta * (y - mean);
  weight = new_weight;
}

void TargetStats::merge(const TargetStats& other) {
  if (other.weight <= 0.0) return;
  if (weight <= 0.0) {
    *this = other;
    return;
  }
  const double total = weight + other.weight;
  const double delta = other.mean - mean;
  mean += delta * other.weight / total;
  m2 += other.m2 + delta * delta * weight * other.weight / total;
  weight = total;
}

double TargetStats::stddev() const { return std::sqrt(std::max(0.0, variance())); }

double variance_reduction_merit(const TargetStats& left, const TargetStats& right) {
  TargetStats parent = left;
  parent.merge(right);
  if (parent.m2 <= 0.0) return 0.0;
  const double merit = 1.0 - (left.m2 + right.m2) / parent.m2;
  return std::clamp(merit, 0.0, 1.0);
}

RangeHistogram::RangeHistogram(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ < 2) throw std::invalid_argument("histogram capacity must be >= 2");
  bins_.reserve(capacity_ + 1);
}

void RangeHistogram::add(double x, double y, double w) {
  auto it = std::upper_bound(bins_.begin(), bins_.end(), x,
                             [](double v, const Bin& b) { return v < b.lo; });
  if (it != bins_.begin() && std::prev(it)->hi >= x) {
    std::prev(it)->stats.add(y, w);
    return;
  }
  Bin fresh{x, x, {}};
  fresh.stats.add(y, w);
  bins_.insert(it, fresh);
  if (bins_.size() <= capacity_) return;

  std::size_t merge_at = 0;
  double narrowest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + 1 < bins_.size(); ++j) {
    const double width = bins_[j + 1].hi - bins_[j].lo;
    if (width < narrowest) {
      narrowest = width;
      merge_at = j;
    }
  }
  bins_[merge_at].hi = bins_[merge_at + 1].hi;
  bins_[merge_at].stats.merge(bins_[merge_at + 1].stats);
  bins_.erase(bins_.begin() + static_cast<std::ptrdiff_t>(merge_at) + 1);
}

std::vector<double> RangeHistogram::thresholds() const {
  std::vector<double> out;
  for (std::size_t j = 0; j + 1 < bins_.size(); ++j) {
    double t = 0.5 * (bins_[j].hi + bins_[j + 1].lo);
    // Adjacent doubles: keep the threshold below the right bin.
    if (!(t < bins_[j + 1].lo)) t = bins_[j].hi;
    out.push_back(t);
  }
  return out;
}

std::optional<SplitCandidate> RangeHistogram::best_split(double min_branch_weight) const {
  if (bins_.size() < 2) return std::nullopt;
  // Suffix merges keep the right-hand statistics exact rather than subtracting.
  std::vector<TargetStats> suffix(bins_.size() + 1);
  for (std::size_t j = bins_.size(); j-- > 0;) {
    suffix[j] = suffix[j + 1];
    suffix[j].merge(bins_[j].stats);
  }
  const auto cuts = thresholds();
  std::optional<SplitCandidate> best;
  TargetStats left;
  for (std::size_t j = 0; j + 1 < bins_.size(); ++j) {
    left.merge(bins_[j].stats);
    const TargetStats& right = suffix[j + 1];
    if (left.weight < min_branch_weight || right.weight < min_branch_weight) continue;
    const double merit = variance_reduction_merit(left, right);
    if (!best || merit > best->merit + kMeritTieTolerance) {
      best = SplitCandidate{-1, cuts[j], merit, left, right};
    }
  }
  return best;
}

TargetStats RangeHistogram::total() const {
  TargetStats t;
  for (const auto& b : bins_) t.merge(b.stats);
  return t;
}

nlohmann::json RangeHistogram::state() const {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& b : bins_) bins.push_back({b.lo, b.hi, b.stats.state()});
  return {{"capacity", capacity_}, {"bins", std::move(bins)}};
}

RangeHistogram RangeHistogram::from_state(const nlohmann::json& j) {
  RangeHistogram h(j.at("capacity").get<std::size_t>());
  for (const auto& b : j.at("bins")) {
    h.bins_.push_back({b.at(0).get<double>(), b.at(1).get<double>(), TargetStats::from_state(b.at(2))});
  }
  return h;
}

AttributeObservers::AttributeObservers(std::vector<int> features, std::size_t capacity)
    : features_(std::move(features)), histograms_(features_.size(), RangeHistogram(capacity)) {}

void AttributeObservers::add(std::span<const double> x, double y, double w) {
  for (std::size_t k = 0; k < features_.size(); ++k) {
    histograms_[k].add(x[static_cast<std::size_t>(features_[k])], y, w);
  }
  weight_ += w;
}

std::vector<SplitCandidate> AttributeObservers::best_per_attribute(double min_branch_weight) const {
  std::vector<SplitCandidate> out;
  for (std::size_t k = 0; k < features_.size(); ++k) {
    if (auto c = histograms_[k].best_split(min_branch_weight)) {
      c->attribute = features_[k];
      out.push_back(*c);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SplitCandidate& a, const SplitCandidate& b) { return a.attribute < b.attribute; });
  return out;
}

nlohmann::json AttributeObservers::state() const {
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& h : histograms_) hist.push_back(h.state());
  return {{"features", features_}, {"histograms", std::move(hist)}, {"weight", weight_}};
}

AttributeObservers AttributeObservers::from_state(const nlohmann::json& j) {
  AttributeObservers o;
  o.features_ = j.at("features").get<std::vector<int>>();
  for (const auto& h : j.at("histograms")) o.histograms_.push_back(RangeHistogram::from_state(h));
  o.weight_ = j.at("weight").get<double>();
  return o;
}

double hoeffding_bound(double range, double delta, double n) {
  return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * n));
}

SplitDecision decide_split(std::span<const SplitCandidate> candidates, double n,
                           double split_confidence, double tie_threshold) {
  SplitDecision d;
  if (n <= 0.0) return d;
  d.bound = hoeffding_bound(1.0, split_confidence, n);
  // Scanning by attribute, "strictly better beyond the tolerance" keeps the
  // lowest attribute among ties.
  std::vector<SplitCandidate> ordered(candidates.begin(), candidates.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.attribute < b.attribute; });
  for (const auto& c : ordered) {
    if (!d.best || c.merit > d.best->merit + kMeritTieTolerance) d.best = c;
  }
  if (!d.best) return d;
  d.second_merit = 0.0;
  for (const auto& c : candidates) {
    if (c.attribute != d.best->attribute) d.second_merit = std::max(d.second_merit, c.merit);
  }
  d.split = d.best->merit > 0.0 &&
            (d.best->merit - d.second_merit > d.bound || d.bound < tie_threshold);
  return d;
}

}  // namespace driftcast::online
