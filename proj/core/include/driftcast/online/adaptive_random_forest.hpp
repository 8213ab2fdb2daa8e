#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "driftcast/online/adwin.hpp"
#include "driftcast/online/hoeffding_tree.hpp"

namespace driftcast::online {

struct AdaptiveRandomForestParams {
  int ensemble_size = 10;
  double poisson_lambda = 6.0;
  /// false: every member sees every example with weight 1.
  bool resample = true;
  /// Attributes sampled per leaf; 0 = ceil(sqrt(d)), -1 = all.
  int max_features = 0;
  double warning_delta = 0.01;
  double drift_delta = 0.001;
  bool detect_drift = true;
  HoeffdingTreeParams tree;

  nlohmann::json to_json() const;
  static AdaptiveRandomForestParams from_json(const nlohmann::json& j);
};

/// Online bagging of Hoeffding trees with random attribute subsets per leaf.
///
/// Each member sees an example with weight ~ Poisson(lambda) from its own
/// seeded generator. The member's absolute error feeds a warning and a drift
/// ADWIN; an error increase flagged by the warning detector starts a background
/// tree, and one flagged by the drift detector replaces the member with its
/// background tree (or a fresh tree). Prediction is the mean over members.
class AdaptiveRandomForestRegressor : public OnlineRegressor {
 public:
  explicit AdaptiveRandomForestRegressor(AdaptiveRandomForestParams params = {},
                                         std::uint64_t seed = 0);

  std::string_view kind() const override { return "adaptive_random_forest"; }
  void learn_one(std::span<const double> x, double y, double weight = 1.0) override;
  double predict_one(std::span<const double> x) const override;

  std::size_t n_members() const { return members_.size(); }
  std::size_t n_replacements() const { return replacements_; }
  std::size_t n_background_starts() const { return background_starts_; }

  nlohmann::json state() const override;
  static AdaptiveRandomForestRegressor from_state(const nlohmann::json& j);

 private:
  struct Member {
    HoeffdingTreeRegressor tree;
    std::optional<HoeffdingTreeRegressor> background;
    Adwin warning;
    Adwin drift;
    std::mt19937_64 rng;
  };

  void initialise(std::size_t n_features);
  HoeffdingTreeRegressor fresh_tree(Member& member) const;

  AdaptiveRandomForestParams params_;
  std::uint64_t seed_;
  std::size_t n_features_ = 0;
  std::vector<Member> members_;
  std::size_t replacements_ = 0;
  std::size_t background_starts_ = 0;
};

}  // namespace driftcast::online
