#include "driftcast/online/passive_aggressive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace driftcast::online {

std::string_view to_string(PaVariant v) {
  switch (v) {
    case PaVariant::pa: return "pa";
    case PaVariant::pa1: return "pa1";
    case PaVariant::pa2: return "pa2";
  }
  return "pa1";
}

PaVariant pa_variant_from_string(std::string_view text) {
  if (text == "pa") return PaVariant::pa;
  if (text == "pa1" || text == "pa-i") return PaVariant::pa1;
  if (text == "pa2" || text == "pa-ii") return PaVariant::pa2;
  throw std::invalid_argument("unknown passive-aggressive variant '" + std::string(text) + "'");
}

nlohmann::json PassiveAggressiveParams::to_json() const {
  return {{"variant", std::string(to_string(variant))},
          {"c", c},
          {"epsilon", epsilon},
          {"fit_intercept", fit_intercept}};
}

PassiveAggressiveParams PassiveAggressiveParams::from_json(const nlohmann::json& j) {
  PassiveAggressiveParams p;
  p.variant = pa_variant_from_string(j.at("variant").get<std::string>());
  p.c = j.at("c").get<double>();
  p.epsilon = j.at("epsilon").get<double>();
  p.fit_intercept = j.at("fit_intercept").get<bool>();
  return p;
}

PassiveAggressiveRegressor::PassiveAggressiveRegressor(PassiveAggressiveParams params)
    : params_(params) {
  if (!(params_.c > 0.0)) throw std::invalid_argument("C must be > 0");
  if (params_.epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
}

double PassiveAggressiveRegressor::predict_one(std::span<const double> x) const {
  if (weights_.empty()) return 0.0;
  check_dimension(weights_.size(), x);
  double acc = bias_;
  for (std::size_t j = 0; j < x.size(); ++j) acc += weights_[j] * x[j];
  return acc;
}

double PassiveAggressiveRegressor::step_size(std::span<const double> x, double y) const {
  const double loss = std::max(0.0, std::fabs(predict_one(x) - y) - params_.epsilon);
  if (loss <= 0.0) return 0.0;
  double sqnorm = 0.0;
  for (double v : x) sqnorm += v * v;
  switch (params_.variant) {
    case PaVariant::pa:
      return sqnorm > 0.0 ? loss / sqnorm : std::numeric_limits<double>::quiet_NaN();
    case PaVariant::pa1:
      return sqnorm > 0.0 ? std::min(params_.c, loss / sqnorm) : params_.c;
    case PaVariant::pa2:
      return loss / (sqnorm + 1.0 / (2.0 * params_.c));
  }
  return 0.0;
}

void PassiveAggressiveRegressor::learn_one(std::span<const double> x, double y, double weight) {
  if (!std::isfinite(y)) throw std::invalid_argument("target must be finite");
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("features must be finite");
  }
  if (weights_.empty()) {
    if (x.empty()) throw std::invalid_argument("feature vector is empty");
    weights_.assign(x.size(), 0.0);
  }
  check_dimension(weights_.size(), x);
  if (weight <= 0.0) return;

  const double y_hat = predict_one(x);
  const double tau = step_size(x, y);
  if (tau == 0.0) return;
  if (std::isnan(tau)) {
    ++n_skipped_;
    return;
  }
  const double direction = y > y_hat ? 1.0 : -1.0;
  for (std::size_t j = 0; j < x.size(); ++j) weights_[j] += direction * tau * x[j];
  if (params_.fit_intercept) bias_ += direction * tau;
  ++n_updates_;
}

nlohmann::json PassiveAggressiveRegressor::state() const {
  return {{"params", params_.to_json()},
          {"weights", weights_},
          {"bias", bias_},
          {"n_updates", n_updates_},
          {"n_skipped", n_skipped_}};
}

PassiveAggressiveRegressor PassiveAggressiveRegressor::from_state(const nlohmann::json& j) {
  PassiveAggressiveRegressor m(PassiveAggressiveParams::from_json(j.at("params")));
  m.weights_ = j.at("weights").get<std::vector<double>>();
  m.bias_ = j.at("bias").get<double>();
  m.n_updates_ = j.at("n_updates").get<std::size_t>();
  m.n_skipped_ = j.at("n_skipped").get<std::size_t>();
  return m;
}

}  // namespace driftcast::online
