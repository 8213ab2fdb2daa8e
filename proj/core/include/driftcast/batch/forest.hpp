#pragma once

#include <cstdint>
#include <vector>

#include "driftcast/batch/cart.hpp"

namespace driftcast::batch {

struct ForestParams {
  int n_trees = 100;
  bool bootstrap = true;
  int max_features = 0;  // 0 = ceil(d / 3), -1 = all
  CartParams tree;       // tree.max_features is overridden by max_features

  nlohmann::json to_json() const;
  static ForestParams from_json(const nlohmann::json& j);
};

/// Bagged CART trees with per-node attribute sampling; predicts the mean.
class RandomForestRegressor : public Regressor {
 public:
  explicit RandomForestRegressor(ForestParams params = {}, std::uint64_t seed = 0);

  std::string_view kind() const override { return "random_forest"; }
  void fit(const TrainingSet& data) override;
  double predict_one(std::span<const double> x) const override;
  const std::vector<CartTree>& trees() const { return trees_; }

  nlohmann::json state() const override;
  static RandomForestRegressor from_state(const nlohmann::json& j);

 private:
  ForestParams params_;
  std::uint64_t seed_;
  std::size_t n_features_ = 0;
  std::vector<CartTree> trees_;
};

}  // namespace driftcast::batch
