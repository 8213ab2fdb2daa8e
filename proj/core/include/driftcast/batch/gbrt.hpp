#pragma once

#include <cstdint>
#include <vector>

#include "driftcast/batch/cart.hpp"

namespace driftcast::batch {

struct GbrtParams {
  int n_stages = 100;
  double learning_rate = 0.1;
  double subsample = 1.0;  // < 1 draws a row subset per stage (seeded)
  CartParams tree{.max_depth = 3};

  nlohmann::json to_json() const;
  static GbrtParams from_json(const nlohmann::json& j);
};

/// Least-squares gradient boosting: start from the target mean, then each stage
/// fits a shallow tree to the current residuals and adds it scaled by the
/// learning rate.
class GradientBoostingRegressor : public Regressor {
 public:
  explicit GradientBoostingRegressor(GbrtParams params = {}, std::uint64_t seed = 0);

  std::string_view kind() const override { return "gradient_boosting"; }
  void fit(const TrainingSet& data) override;
  double predict_one(std::span<const double> x) const override;

  double initial_prediction() const { return init_; }
  const std::vector<CartTree>& stages() const { return stages_; }
  /// Training MSE after the initial guess and after each stage.
  const std::vector<double>& train_mse_trace() const { return train_mse_; }

  nlohmann::json state() const override;
  static GradientBoostingRegressor from_state(const nlohmann::json& j);

 private:
  GbrtParams params_;
  std::uint64_t seed_;
  std::size_t n_features_ = 0;
  double init_ = 0.0;
  std::vector<CartTree> stages_;
  std::vector<double> train_mse_;
};

}  // namespace driftcast::batch
