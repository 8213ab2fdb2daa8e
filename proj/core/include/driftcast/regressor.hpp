#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "driftcast/windowing.hpp"

namespace driftcast {

/// Row-major feature matrix plus targets.
struct TrainingSet {
  std::vector<double> x;
  std::vector<double> y;
  std::size_t n_features = 0;

  std::size_t size() const { return y.size(); }
  std::span<const double> row(std::size_t i) const {
    return {x.data() + i * n_features, n_features};
  }
  double at(std::size_t i, std::size_t j) const { return x[i * n_features + j]; }
};

TrainingSet to_training_set(std::span<const WindowedExample> examples);

/// Shared contract of batch and online learners.
///
/// predict_one never mutates the model. A model that has seen no data predicts
/// 0.0.
class Regressor {
 public:
  virtual ~Regressor() = default;

  /// Stable identifier used in snapshots ("hoeffding_tree", "ridge", ...).
  virtual std::string_view kind() const = 0;
  virtual bool incremental() const { return false; }

  /// Batch learners refit from scratch; online learners learn the rows in order.
  virtual void fit(const TrainingSet& data) = 0;
  virtual double predict_one(std::span<const double> x) const = 0;

  /// Full model state; see snapshot.hpp for the envelope.
  virtual nlohmann::json state() const = 0;
};

class OnlineRegressor : public Regressor {
 public:
  bool incremental() const override { return true; }
  void fit(const TrainingSet& data) override;
  /// O(model size); never revisits earlier examples.
  virtual void learn_one(std::span<const double> x, double y, double weight = 1.0) = 0;
};

/// Throws std::invalid_argument unless x matches the expected width (0 = unset).
void check_dimension(std::size_t expected, std::span<const double> x);

}  // namespace driftcast
