#include "driftcast/online/hoeffding_adaptive_tree.hpp"

#include <cmath>
#include <stdexcept>

#include "tree_node.hpp"

namespace driftcast::online {

nlohmann::json HoeffdingAdaptiveTreeParams::to_json() const {
  return {{"tree", tree.to_json()},
          {"monitor_delta", monitor_delta},
          {"switch_significance", switch_significance},
          {"min_monitor_width", min_monitor_width}};
}

HoeffdingAdaptiveTreeParams HoeffdingAdaptiveTreeParams::from_json(const nlohmann::json& j) {
  HoeffdingAdaptiveTreeParams p;
  p.tree = HoeffdingTreeParams::from_json(j.at("tree"));
  p.monitor_delta = j.at("monitor_delta").get<double>();
  p.switch_significance = j.at("switch_significance").get<double>();
  p.min_monitor_width = j.at("min_monitor_width").get<int>();
  return p;
}

HoeffdingAdaptiveTreeRegressor::HoeffdingAdaptiveTreeRegressor(HoeffdingAdaptiveTreeParams params,
                                                               std::uint64_t seed)
    : params_(params), grower_(std::make_unique<detail::TreeGrower>(params.tree, seed)) {
  if (!(params_.switch_significance > 0.0 && params_.switch_significance < 1.0)) {
    throw std::invalid_argument("switch_significance must lie in (0, 1)");
  }
  if (!(params_.monitor_delta > 0.0 && params_.monitor_delta < 1.0)) {
    throw std::invalid_argument("monitor_delta must lie in (0, 1)");
  }
}

HoeffdingAdaptiveTreeRegressor::~HoeffdingAdaptiveTreeRegressor() = default;
HoeffdingAdaptiveTreeRegressor::HoeffdingAdaptiveTreeRegressor(
    HoeffdingAdaptiveTreeRegressor&&) noexcept = default;
HoeffdingAdaptiveTreeRegressor& HoeffdingAdaptiveTreeRegressor::operator=(
    HoeffdingAdaptiveTreeRegressor&&) noexcept = default;

double HoeffdingAdaptiveTreeRegressor::normalized_error(double abs_error, double mean,
                                                        double sd) const {
  if (sd <= 0.0) return 0.5;
  return 0.5 * std::erfc(-(abs_error - mean) / (sd * std::sqrt(2.0)));
}

void HoeffdingAdaptiveTreeRegressor::learn_one(std::span<const double> x, double y, double weight) {
  if (!std::isfinite(y)) throw std::invalid_argument("target must be finite");
  if (weight <= 0.0) return;
  grower_->ensure_root(x);

  const double tree_error = std::fabs(y - grower_->predict_from(*grower_->root, x));
  const double sd = error_weight_ > 1.0 ? std::sqrt(error_m2_ / error_weight_) : 0.0;
  learn_node(grower_->root, x, y, weight, error_mean_, sd, true);

  error_weight_ += 1.0;
  const double d = tree_error - error_mean_;
  error_mean_ += d / error_weight_;
  error_m2_ += d * (tree_error - error_mean_);
}

void HoeffdingAdaptiveTreeRegressor::learn_node(std::unique_ptr<detail::TreeNode>& slot,
                                                std::span<const double> x, double y, double w,
                                                double error_scale_mean, double error_scale_sd,
                                                bool feed_monitor) {
  detail::TreeNode& node = *slot;
  bool error_increased = false;
  if (feed_monitor) {
    if (!node.monitor) node.monitor = std::make_unique<Adwin>(AdwinParams{.delta = params_.monitor_delta});
    const double err = normalized_error(std::fabs(y - grower_->predict_from(node, x)),
                                        error_scale_mean, error_scale_sd);
    const double before = node.monitor->estimation();
    const auto update = node.monitor->update(err);
    error_increased = update.drift && node.monitor->estimation() > before;
  }

  if (node.is_leaf()) {
    grower_->learn_leaf(node, x, y, w);
    grower_->maybe_split(node);
    return;
  }

  if (error_increased && !node.alternate) {
    node.alternate = grower_->make_leaf(node.depth, nullptr, {});
    ++alternates_started_;
  } else if (node.alternate && node.alternate->monitor &&
             node.alternate->monitor->width() >= params_.min_monitor_width &&
             node.monitor->width() >= params_.min_monitor_width) {
    const double old_error = node.monitor->estimation();
    const double alt_error = node.alternate->monitor->estimation();
    const double f_n = 1.0 / static_cast<double>(node.alternate->monitor->width()) +
                       1.0 / static_cast<double>(node.monitor->width());
    const double bound = std::sqrt(2.0 * old_error * (1.0 - old_error) *
                                   std::log(2.0 / params_.switch_significance) * f_n);
    if (bound < old_error - alt_error) {
      std::unique_ptr<detail::TreeNode> replacement = std::move(node.alternate);
      slot = std::move(replacement);
      ++switches_;
      // The promoted subtree keeps its own monitor; learn this example once.
      learn_node(slot, x, y, w, error_scale_mean, error_scale_sd, false);
      return;
    }
    if (bound < alt_error - old_error) {
      node.alternate.reset();
      ++pruned_;
    }
  }

  if (node.alternate) learn_node(node.alternate, x, y, w, error_scale_mean, error_scale_sd, true);
  std::unique_ptr<detail::TreeNode>& child =
      x[static_cast<std::size_t>(node.attribute)] <= node.threshold ? node.left : node.right;
  learn_node(child, x, y, w, error_scale_mean, error_scale_sd, true);
}

double HoeffdingAdaptiveTreeRegressor::predict_one(std::span<const double> x) const {
  return grower_->predict(x);
}

std::size_t HoeffdingAdaptiveTreeRegressor::n_leaves() const {
  // an untrained tree behaves as one empty leaf
  if (!grower_->root) return 1;
  return detail::TreeGrower::count_leaves(grower_->root.get());
}

nlohmann::json HoeffdingAdaptiveTreeRegressor::state() const {
  return {{"params", params_.to_json()},
          {"grower", grower_->state()},
          {"error_weight", error_weight_},
          {"error_mean", error_mean_},
          {"error_m2", error_m2_},
          {"alternates_started", alternates_started_},
          {"switches", switches_},
          {"pruned", pruned_}};
}

HoeffdingAdaptiveTreeRegressor HoeffdingAdaptiveTreeRegressor::from_state(const nlohmann::json& j) {
  HoeffdingAdaptiveTreeRegressor t(HoeffdingAdaptiveTreeParams::from_json(j.at("params")));
  t.grower_ = detail::TreeGrower::from_state(j.at("grower"));
  t.error_weight_ = j.at("error_weight").get<double>();
  t.error_mean_ = j.at("error_mean").get<double>();
  t.error_m2_ = j.at("error_m2").get<double>();
  t.alternates_started_ = j.at("alternates_started").get<std::size_t>();
  t.switches_ = j.at("switches").get<std::size_t>();
  t.pruned_ = j.at("pruned").get<std::size_t>();
  return t;
}

}  // namespace driftcast::online
