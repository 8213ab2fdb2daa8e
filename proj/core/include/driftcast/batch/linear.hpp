#pragma once

#include <vector>

#include "driftcast/regressor.hpp"

namespace driftcast::batch {

/// Least squares with an optional L2 penalty on the weights (not the bias).
///
/// Features and target are standardised with fit-time statistics, the penalty
/// applies in that space, and the coefficients are mapped back to raw units.
/// penalty = 0 uses a complete orthogonal decomposition, which yields the
/// minimum-norm solution when the design is rank deficient.
class LinearRegression : public Regressor {
 public:
  explicit LinearRegression(double penalty = 0.0);

  std::string_view kind() const override { return penalty_ > 0.0 ? "ridge" : "ols"; }
  void fit(const TrainingSet& data) override;
  double predict_one(std::span<const double> x) const override;

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  double penalty() const { return penalty_; }
  /// Rank of the standardised design at the last fit; < d flags degeneracy.
  std::size_t rank() const { return rank_; }

  nlohmann::json state() const override;
  static LinearRegression from_state(const nlohmann::json& j);

 private:
  double penalty_;
  std::vector<double> weights_;
  double bias_ = 0.0;
  std::size_t rank_ = 0;
};

}  // namespace driftcast::batch
