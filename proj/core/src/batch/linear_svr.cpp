#include "driftcast/batch/linear_svr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace driftcast::batch {

nlohmann::json LinearSvrParams::to_json() const {
  return {{"c", c},
          {"epsilon", epsilon},
          {"epsilon_scaled_by_target_std", epsilon_scaled_by_target_std},
          {"epochs", epochs},
          {"eta0", eta0}};
}

LinearSvrParams LinearSvrParams::from_json(const nlohmann::json& j) {
  LinearSvrParams p;
  p.c = j.at("c").get<double>();
  p.epsilon = j.at("epsilon").get<double>();
  p.epsilon_scaled_by_target_std = j.at("epsilon_scaled_by_target_std").get<bool>();
  p.epochs = j.at("epochs").get<int>();
  p.eta0 = j.at("eta0").get<double>();
  return p;
}

LinearSvr::LinearSvr(LinearSvrParams params, std::uint64_t seed) : params_(params), seed_(seed) {
  if (!(params_.c > 0.0)) throw std::invalid_argument("C must be > 0");
  if (!(params_.epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (params_.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(params_.eta0 > 0.0)) throw std::invalid_argument("eta0 must be > 0");
}

void LinearSvr::fit(const TrainingSet& data) {
  const std::size_t n = data.size();
  const std::size_t d = data.n_features;
  if (n == 0) throw std::invalid_argument("linear SVR needs at least one example");

  std::vector<double> mean(d, 0.0), scale(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += data.at(i, j);
  }
  for (auto& m : mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) scale[j] += (data.at(i, j) - mean[j]) * (data.at(i, j) - mean[j]);
  }
  for (auto& s : scale) {
    s = std::sqrt(s / static_cast<double>(n));
    if (!(s > 0.0)) s = 1.0;
  }
  const double y_mean = std::accumulate(data.y.begin(), data.y.end(), 0.0) / static_cast<double>(n);
  double y_scale = 0.0;
  for (double v : data.y) y_scale += (v - y_mean) * (v - y_mean);
  y_scale = std::sqrt(y_scale / static_cast<double>(n));
  if (!(y_scale > 0.0)) y_scale = 1.0;

  std::vector<double> xs(n * d);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) xs[i * d + j] = (data.at(i, j) - mean[j]) / scale[j];
    ys[i] = (data.y[i] - y_mean) / y_scale;
  }
  const double eps = params_.epsilon_scaled_by_target_std ? params_.epsilon : params_.epsilon / y_scale;
  const double lambda = 1.0 / (params_.c * static_cast<double>(n));

  std::vector<double> w(d, 0.0), w_avg(d, 0.0);
  double b = 0.0, b_avg = 0.0;
  auto margin = [&](const std::vector<double>& ww, double bb, std::size_t i) {
    double acc = bb;
    const double* row = xs.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) acc += ww[j] * row[j];
    return ys[i] - acc;
  };
  const double nn = static_cast<double>(n);

  std::mt19937_64 rng(seed_);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  objective_.clear();
  objective_.reserve(static_cast<std::size_t>(params_.epochs));
  double t = 0.0;
  for (int epoch = 0; epoch < params_.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      const double eta = params_.eta0 / std::sqrt(1.0 + t / nn);
      t += 1.0;
      const double r = margin(w, b, i);
      const double shrink = 1.0 - eta * lambda;
      for (auto& wj : w) wj *= shrink;
      if (std::abs(r) > eps) {
        const double g = eta * (r > 0.0 ? 1.0 : -1.0);
        const double* row = xs.data() + i * d;
        for (std::size_t j = 0; j < d; ++j) w[j] += g * row[j];
        b += g;
      }
      // running mean of the iterates
      for (std::size_t j = 0; j < d; ++j) w_avg[j] += (w[j] - w_avg[j]) / t;
      b_avg += (b - b_avg) / t;
    }
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) loss += std::max(0.0, std::abs(margin(w_avg, b_avg, i)) - eps);
    double norm2 = 0.0;
    for (double wj : w_avg) norm2 += wj * wj;
    objective_.push_back(0.5 * lambda * norm2 + loss / static_cast<double>(n));
  }

  weights_.assign(d, 0.0);
  bias_ = y_mean + y_scale * b_avg;
  for (std::size_t j = 0; j < d; ++j) {
    weights_[j] = y_scale * w_avg[j] / scale[j];
    bias_ -= weights_[j] * mean[j];
  }
}

double LinearSvr::predict_one(std::span<const double> x) const {
  if (weights_.empty()) return bias_;
  check_dimension(weights_.size(), x);
  double acc = bias_;
  for (std::size_t j = 0; j < x.size(); ++j) acc += weights_[j] * x[j];
  return acc;
}

nlohmann::json LinearSvr::state() const {
  return {{"params", params_.to_json()}, {"seed", seed_},          {"weights", weights_},
          {"bias", bias_},               {"objective", objective_}};
}

LinearSvr LinearSvr::from_state(const nlohmann::json& j) {
  LinearSvr m(LinearSvrParams::from_json(j.at("params")), j.at("seed").get<std::uint64_t>());
  m.weights_ = j.at("weights").get<std::vector<double>>();
  m.bias_ = j.at("bias").get<double>();
  m.objective_ = j.at("objective").get<std::vector<double>>();
  return m;
}

}  // namespace driftcast::batch
