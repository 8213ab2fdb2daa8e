#include "driftcast/batch/forest.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace driftcast::batch {

nlohmann::json ForestParams::to_json() const {
  return {{"n_trees", n_trees}, {"bootstrap", bootstrap}, {"max_features", max_features}, {"tree", tree.to_json()}};
}

ForestParams ForestParams::from_json(const nlohmann::json& j) {
  ForestParams p;
  p.n_trees = j.at("n_trees").get<int>();
  p.bootstrap = j.at("bootstrap").get<bool>();
  p.max_features = j.at("max_features").get<int>();
  p.tree = CartParams::from_json(j.at("tree"));
  return p;
}

RandomForestRegressor::RandomForestRegressor(ForestParams params, std::uint64_t seed)
    : params_(params), seed_(seed) {
  if (params_.n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
}

void RandomForestRegressor::fit(const TrainingSet& data) {
  if (data.size() == 0) throw std::invalid_argument("random forest needs at least one example");
  n_features_ = data.n_features;
  CartParams tree_params = params_.tree;
  if (params_.max_features == -1) {
    tree_params.max_features = 0;
  } else if (params_.max_features == 0) {
    tree_params.max_features = static_cast<int>(std::ceil(static_cast<double>(n_features_) / 3.0));
  } else {
    tree_params.max_features = params_.max_features;
  }

  const PresortedColumns presorted(data);
  std::mt19937_64 master(seed_);
  trees_.clear();
  trees_.reserve(static_cast<std::size_t>(params_.n_trees));
  std::vector<std::uint32_t> rows(data.size());
  for (int t = 0; t < params_.n_trees; ++t) {
    std::mt19937_64 rng(master());
    if (params_.bootstrap) {
      std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(data.size() - 1));
      for (auto& r : rows) r = pick(rng);
    } else {
      std::iota(rows.begin(), rows.end(), 0u);
    }
    trees_.push_back(CartTree::grow(data, data.y, rows, tree_params, presorted, &rng));
  }
}

double RandomForestRegressor::predict_one(std::span<const double> x) const {
  if (trees_.empty()) return 0.0;
  check_dimension(n_features_, x);
  double sum = 0.0;
  for (const auto& t : trees_) sum += t.predict(x);
  return sum / static_cast<double>(trees_.size());
}

nlohmann::json RandomForestRegressor::state() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : trees_) trees.push_back(t.state());
  return {{"params", params_.to_json()}, {"seed", seed_}, {"n_features", n_features_}, {"trees", std::move(trees)}};
}

RandomForestRegressor RandomForestRegressor::from_state(const nlohmann::json& j) {
  RandomForestRegressor m(ForestParams::from_json(j.at("params")), j.at("seed").get<std::uint64_t>());
  m.n_features_ = j.at("n_features").get<std::size_t>();
  for (const auto& t : j.at("trees")) m.trees_.push_back(CartTree::from_state(t));
  return m;
}

}  // namespace driftcast::batch
