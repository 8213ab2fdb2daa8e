#include "driftcast/online/hoeffding_tree.hpp"

#include <cmath>
#include <stdexcept>

#include "tree_node.hpp"

namespace driftcast::online {

HoeffdingTreeRegressor::HoeffdingTreeRegressor(HoeffdingTreeParams params, std::uint64_t seed)
    : grower_(std::make_unique<detail::TreeGrower>(params, seed)) {}

HoeffdingTreeRegressor::~HoeffdingTreeRegressor() = default;
HoeffdingTreeRegressor::HoeffdingTreeRegressor(HoeffdingTreeRegressor&&) noexcept = default;
HoeffdingTreeRegressor& HoeffdingTreeRegressor::operator=(HoeffdingTreeRegressor&&) noexcept = default;

void HoeffdingTreeRegressor::learn_one(std::span<const double> x, double y, double weight) {
  if (!std::isfinite(y)) throw std::invalid_argument("target must be finite");
  if (weight <= 0.0) return;
  grower_->ensure_root(x);
  detail::TreeNode* leaf = detail::TreeGrower::leaf_for(grower_->root.get(), x);
  grower_->learn_leaf(*leaf, x, y, weight);
  grower_->maybe_split(*leaf);
}

double HoeffdingTreeRegressor::predict_one(std::span<const double> x) const {
  return grower_->predict(x);
}

std::size_t HoeffdingTreeRegressor::n_leaves() const {
  // an untrained tree behaves as one empty leaf
  if (!grower_->root) return 1;
  return detail::TreeGrower::count_leaves(grower_->root.get());
}
std::size_t HoeffdingTreeRegressor::n_nodes() const {
  if (!grower_->root) return 1;
  return detail::TreeGrower::count_nodes(grower_->root.get());
}
std::size_t HoeffdingTreeRegressor::depth() const {
  return detail::TreeGrower::max_depth(grower_->root.get());
}
const HoeffdingTreeParams& HoeffdingTreeRegressor::params() const { return grower_->params; }

nlohmann::json HoeffdingTreeRegressor::state() const { return grower_->state(); }

HoeffdingTreeRegressor HoeffdingTreeRegressor::from_state(const nlohmann::json& j) {
  HoeffdingTreeRegressor t;
  t.grower_ = detail::TreeGrower::from_state(j);
  return t;
}

}  // namespace driftcast::online
