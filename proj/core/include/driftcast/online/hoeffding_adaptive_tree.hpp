#pragma once

#include <cstdint>
#include <memory>

#include "driftcast/online/adwin.hpp"
#include "driftcast/online/hoeffding_tree.hpp"

namespace driftcast::online {

struct HoeffdingAdaptiveTreeParams {
  HoeffdingTreeParams tree;
  double monitor_delta = 0.002;      // ADWIN confidence for per-node error monitors
  double switch_significance = 0.05;  // confidence for replacing a branch by its alternate
  int min_monitor_width = 300;        // both monitors need this many errors before comparing

  nlohmann::json to_json() const;
  static HoeffdingAdaptiveTreeParams from_json(const nlohmann::json& j);
};

namespace detail {
struct TreeNode;
}

/// Hoeffding tree whose nodes monitor their own normalised error with ADWIN.
/// An increase in a split node's error starts an alternate subtree that
/// learns alongside the branch; the alternate replaces the branch once its
/// error is lower with statistical support, or is discarded if it is worse.
///
/// Without a replacement, predictions are identical to a HoeffdingTreeRegressor
/// with the same tree parameters fed the same stream.
class HoeffdingAdaptiveTreeRegressor : public OnlineRegressor {
 public:
  explicit HoeffdingAdaptiveTreeRegressor(HoeffdingAdaptiveTreeParams params = {},
                                          std::uint64_t seed = 0);
  ~HoeffdingAdaptiveTreeRegressor() override;
  HoeffdingAdaptiveTreeRegressor(HoeffdingAdaptiveTreeRegressor&&) noexcept;
  HoeffdingAdaptiveTreeRegressor& operator=(HoeffdingAdaptiveTreeRegressor&&) noexcept;

  std::string_view kind() const override { return "hoeffding_adaptive_tree"; }
  void learn_one(std::span<const double> x, double y, double weight = 1.0) override;
  double predict_one(std::span<const double> x) const override;

  std::size_t n_leaves() const;
  std::size_t n_alternates_started() const { return alternates_started_; }
  std::size_t n_switches() const { return switches_; }
  std::size_t n_pruned_alternates() const { return pruned_; }

  nlohmann::json state() const override;
  static HoeffdingAdaptiveTreeRegressor from_state(const nlohmann::json& j);

 private:
  void learn_node(std::unique_ptr<detail::TreeNode>& slot, std::span<const double> x, double y,
                  double w, double error_scale_mean, double error_scale_sd, bool feed_monitor);
  double normalized_error(double abs_error, double mean, double sd) const;

  HoeffdingAdaptiveTreeParams params_;
  std::unique_ptr<detail::TreeGrower> grower_;
  // Running |error| of the whole tree, used to map node errors into (0, 1).
  double error_weight_ = 0.0;
  double error_mean_ = 0.0;
  double error_m2_ = 0.0;
  std::size_t alternates_started_ = 0;
  std::size_t switches_ = 0;
  std::size_t pruned_ = 0;
};

}  // namespace driftcast::online
