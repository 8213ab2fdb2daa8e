#include "driftcast/regressor.hpp"

#include <stdexcept>

namespace driftcast {

TrainingSet to_training_set(std::span<const WindowedExample> examples) {
  TrainingSet set;
  if (examples.empty()) return set;
  set.n_features = examples.front().features.size();
  set.x.reserve(examples.size() * set.n_features);
  set.y.reserve(examples.size());
  for (const auto& ex : examples) {
    if (ex.features.size() != set.n_features) {
      throw std::invalid_argument("examples have inconsistent feature counts");
    }
    set.x.insert(set.x.end(), ex.features.begin(), ex.features.end());
    set.y.push_back(ex.target);
  }
  return set;
}

void OnlineRegressor::fit(const TrainingSet& data) {
  for (std::size_t i = 0; i < data.size(); ++i) learn_one(data.row(i), data.y[i]);
}

void check_dimension(std::size_t expected, std::span<const double> x) {
  if (expected != 0 && x.size() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) + " features, got " +
                                std::to_string(x.size()));
  }
}

}  // namespace driftcast
