#include "driftcast/batch/gbrt.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace driftcast::batch {

nlohmann::json GbrtParams::to_json() const {
  return {{"n_stages", n_stages}, {"learning_rate", learning_rate}, {"subsample", subsample}, {"tree", tree.to_json()}};
}

GbrtParams GbrtParams::from_json(const nlohmann::json& j) {
  GbrtParams p;
  p.n_stages = j.at("n_stages").get<int>();
  p.learning_rate = j.at("learning_rate").get<double>();
  p.subsample = j.at("subsample").get<double>();
  p.tree = CartParams::from_json(j.at("tree"));
  return p;
}

GradientBoostingRegressor::GradientBoostingRegressor(GbrtParams params, std::uint64_t seed)
    : params_(params), seed_(seed) {
  if (params_.n_stages < 1) throw std::invalid_argument("n_stages must be >= 1");
  if (!(params_.learning_rate > 0.0 && params_.learning_rate <= 1.0)) {
    throw std::invalid_argument("learning_rate must lie in (0, 1]");
  }
  if (!(params_.subsample > 0.0 && params_.subsample <= 1.0)) {
    throw std::invalid_argument("subsample must lie in (0, 1]");
  }
}

void GradientBoostingRegressor::fit(const TrainingSet& data) {
  const std::size_t n = data.size();
  if (n == 0) throw std::invalid_argument("gradient boosting needs at least one example");
  n_features_ = data.n_features;
  init_ = std::accumulate(data.y.begin(), data.y.end(), 0.0) / static_cast<double>(n);

  std::vector<double> current(n, init_);
  std::vector<double> residual(n);
  auto mse = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (data.y[i] - current[i]) * (data.y[i] - current[i]);
    return s / static_cast<double>(n);
  };

  const PresortedColumns presorted(data);
  std::mt19937_64 rng(seed_);
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  std::vector<std::uint32_t> rows = all;

  stages_.clear();
  train_mse_.assign(1, mse());
  for (int s = 0; s < params_.n_stages; ++s) {
    for (std::size_t i = 0; i < n; ++i) residual[i] = data.y[i] - current[i];
    if (params_.subsample < 1.0) {
      rows = all;
      std::shuffle(rows.begin(), rows.end(), rng);
      rows.resize(std::max<std::size_t>(1, static_cast<std::size_t>(params_.subsample * static_cast<double>(n))));
    }
    CartTree stage = CartTree::grow(data, residual, rows, params_.tree, presorted, &rng);
    for (std::size_t i = 0; i < n; ++i) current[i] += params_.learning_rate * stage.predict(data.row(i));
    stages_.push_back(std::move(stage));
    train_mse_.push_back(mse());
  }
}

double GradientBoostingRegressor::predict_one(std::span<const double> x) const {
  if (stages_.empty()) return init_;
  check_dimension(n_features_, x);
  double acc = 0.0;
  for (const auto& t : stages_) acc += t.predict(x);
  return init_ + params_.learning_rate * acc;
}

nlohmann::json GradientBoostingRegressor::state() const {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& t : stages_) stages.push_back(t.state());
  return {{"params", params_.to_json()}, {"seed", seed_},         {"n_features", n_features_},
          {"init", init_},               {"stages", std::move(stages)}, {"train_mse", train_mse_}};
}

GradientBoostingRegressor GradientBoostingRegressor::from_state(const nlohmann::json& j) {
  GradientBoostingRegressor m(GbrtParams::from_json(j.at("params")), j.at("seed").get<std::uint64_t>());
  m.n_features_ = j.at("n_features").get<std::size_t>();
  m.init_ = j.at("init").get<double>();
  for (const auto& t : j.at("stages")) m.stages_.push_back(CartTree::from_state(t));
  m.train_mse_ = j.at("train_mse").get<std::vector<double>>();
  return m;
}

}  // namespace driftcast::batch
