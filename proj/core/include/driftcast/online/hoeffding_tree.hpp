#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "driftcast/regressor.hpp"

namespace driftcast::online {

enum class LeafPrediction { mean, perceptron, adaptive };

std::string_view to_string(LeafPrediction mode);
LeafPrediction leaf_prediction_from_string(std::string_view text);

struct HoeffdingTreeParams {
  int grace_period = 200;
  double split_confidence = 1e-7;
  double tie_threshold = 0.05;
  LeafPrediction leaf_prediction = LeafPrediction::adaptive;
  double learning_ratio = 0.02;        // leaf perceptron step at n = 0
  double learning_ratio_decay = 0.001;  // step = ratio / (1 + n * decay)
  double error_fading = 0.99;          // adaptive mode: faded |error| of each predictor
  double min_branch_weight = 5.0;      // per side of a candidate split
  std::size_t histogram_bins = 64;
  int max_depth = 0;     // 0 = unlimited
  int max_features = 0;  // attributes sampled per leaf; 0 = all

  nlohmann::json to_json() const;
  static HoeffdingTreeParams from_json(const nlohmann::json& j);
};

namespace detail {
class TreeGrower;
}

/// Incremental regression tree: leaves accumulate per-attribute split
/// statistics and split on variance reduction once the Hoeffding bound
/// separates the two best attributes. Leaves predict with the target mean, a
/// standardised online perceptron, or whichever has the lower faded error.
class HoeffdingTreeRegressor : public OnlineRegressor {
 public:
  explicit HoeffdingTreeRegressor(HoeffdingTreeParams params = {}, std::uint64_t seed = 0);
  ~HoeffdingTreeRegressor() override;
  HoeffdingTreeRegressor(HoeffdingTreeRegressor&&) noexcept;
  HoeffdingTreeRegressor& operator=(HoeffdingTreeRegressor&&) noexcept;

  std::string_view kind() const override { return "hoeffding_tree"; }
  void learn_one(std::span<const double> x, double y, double weight = 1.0) override;
  double predict_one(std::span<const double> x) const override;

  std::size_t n_leaves() const;
  std::size_t n_nodes() const;
  std::size_t depth() const;
  const HoeffdingTreeParams& params() const;

  nlohmann::json state() const override;
  static HoeffdingTreeRegressor from_state(const nlohmann::json& j);

 private:
  std::unique_ptr<detail::TreeGrower> grower_;
};

}  // namespace driftcast::online
