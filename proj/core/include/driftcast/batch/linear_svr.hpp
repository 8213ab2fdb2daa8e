#pragma once

#include <cstdint>
#include <vector>

#include "driftcast/regressor.hpp"

namespace driftcast::batch {

struct LinearSvrParams {
  double c = 1.0;
  double epsilon = 0.1;
  /// When true the tube half-width is epsilon * sd(y); otherwise epsilon is in
  /// target units.
  bool epsilon_scaled_by_target_std = true;
  int epochs = 1000;
  double eta0 = 0.1;  // initial step, standardised units

  nlohmann::json to_json() const;
  static LinearSvrParams from_json(const nlohmann::json& j);
};

/// Linear support-vector regression trained by epoch-shuffled subgradient
/// descent on  lambda/2 |w|^2 + mean(max(0, |y - w.x - b| - eps)),
/// lambda = 1 / (C n). Inputs and target are standardised at fit time. The
/// step for update t is eta0 / sqrt(1 + t / n); the fitted model is the
/// running average of all iterates.
class LinearSvr : public Regressor {
 public:
  explicit LinearSvr(LinearSvrParams params = {}, std::uint64_t seed = 0);

  std::string_view kind() const override { return "linear_svr"; }
  void fit(const TrainingSet& data) override;
  double predict_one(std::span<const double> x) const override;

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  /// Objective (standardised space) of the averaged model after each epoch.
  const std::vector<double>& objective_trace() const { return objective_; }

  nlohmann::json state() const override;
  static LinearSvr from_state(const nlohmann::json& j);

 private:
  LinearSvrParams params_;
  std::uint64_t seed_;
  std::vector<double> weights_;
  double bias_ = 0.0;
  std::vector<double> objective_;
};

}  // namespace driftcast::batch
