#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "driftcast/regressor.hpp"

namespace driftcast::online {

enum class PaVariant { pa, pa1, pa2 };

std::string_view to_string(PaVariant v);
PaVariant pa_variant_from_string(std::string_view text);

struct PassiveAggressiveParams {
  PaVariant variant = PaVariant::pa1;
  double c = 1.0;        // aggressiveness
  double epsilon = 0.1;  // insensitivity
  bool fit_intercept = true;

  nlohmann::json to_json() const;
  static PassiveAggressiveParams from_json(const nlohmann::json& j);
};

/// Online epsilon-insensitive linear regression. With loss
/// l = max(0, |w.x + b - y| - epsilon), a positive loss moves w by
/// sign(y - y_hat) * tau * x (and b by sign * tau), where tau is
/// l/|x|^2 (PA), min(C, l/|x|^2) (PA-I) or l/(|x|^2 + 1/(2C)) (PA-II).
/// The squared norm covers the features only, so with an intercept the
/// post-update loss is not forced to zero.
class PassiveAggressiveRegressor : public OnlineRegressor {
 public:
  explicit PassiveAggressiveRegressor(PassiveAggressiveParams params = {});

  std::string_view kind() const override { return "passive_aggressive"; }
  void learn_one(std::span<const double> x, double y, double weight = 1.0) override;
  double predict_one(std::span<const double> x) const override;

  /// Step size the current model would take on (x, y); 0 when passive.
  double step_size(std::span<const double> x, double y) const;

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  std::size_t n_updates() const { return n_updates_; }
  /// PA updates with loss > 0 but |x| = 0, where the step is undefined.
  std::size_t n_skipped_zero_norm() const { return n_skipped_; }

  nlohmann::json state() const override;
  static PassiveAggressiveRegressor from_state(const nlohmann::json& j);

 private:
  PassiveAggressiveParams params_;
  std::vector<double> weights_;
  double bias_ = 0.0;
  std::size_t n_updates_ = 0;
  std::size_t n_skipped_ = 0;
};

}  // namespace driftcast::online
