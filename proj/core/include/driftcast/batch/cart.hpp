#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "driftcast/regressor.hpp"

namespace driftcast::batch {

struct CartParams {
  int max_depth = 0;  // 0 = unlimited
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  int max_features = 0;  // attributes drawn per node; 0 = all

  nlohmann::json to_json() const;
  static CartParams from_json(const nlohmann::json& j);
};

/// Relative tolerance under which two split gains count as equal; the lower
/// attribute index, then the lower threshold, wins.
inline constexpr double kGainTieTolerance = 1e-10;

/// Row indices of a dataset ordered by each feature (stable within ties).
/// Shared by every tree grown on the same matrix.
class PresortedColumns {
 public:
  explicit PresortedColumns(const TrainingSet& data);
  std::span<const std::uint32_t> order(std::size_t feature) const;

 private:
  std::size_t n_rows_;
  std::vector<std::uint32_t> orders_;  // feature-major
};

/// Binary regression tree grown greedily on squared error. Candidate
/// thresholds are midpoints of consecutive distinct values; x <= threshold
/// goes left. Leaves hold the mean target of their rows.
class CartTree {
 public:
  struct Node {
    int attribute = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
    std::uint32_t n_samples = 0;
  };

  /// `rows` may repeat indices (bootstrap). `targets` is indexed by row and
  /// may differ from data.y (boosting residuals). `rng` is required when
  /// params.max_features selects a subset.
  static CartTree grow(const TrainingSet& data, std::span<const double> targets,
                       std::span<const std::uint32_t> rows, const CartParams& params,
                       const PresortedColumns& presorted, std::mt19937_64* rng = nullptr);

  double predict(std::span<const double> x) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t n_leaves() const;

  nlohmann::json state() const;
  static CartTree from_state(const nlohmann::json& j);

 private:
  std::vector<Node> nodes_;
};

class DecisionTreeRegressor : public Regressor {
 public:
  explicit DecisionTreeRegressor(CartParams params = {}, std::uint64_t seed = 0);

  std::string_view kind() const override { return "decision_tree"; }
  void fit(const TrainingSet& data) override;
  double predict_one(std::span<const double> x) const override;
  const CartTree& tree() const { return tree_; }

  nlohmann::json state() const override;
  static DecisionTreeRegressor from_state(const nlohmann::json& j);

 private:
  CartParams params_;
  std::uint64_t seed_;
  std::size_t n_features_ = 0;
  CartTree tree_;
};

}  // namespace driftcast::batch
