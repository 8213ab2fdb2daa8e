#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "driftcast/online/adwin.hpp"
#include "driftcast/online/hoeffding_tree.hpp"
#include "driftcast/online/split_statistics.hpp"

namespace driftcast::online::detail {

/// Linear leaf model on standardised inputs and target.
struct LeafModel {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<TargetStats> x_stats;
  TargetStats y_stats;
  double n_updates = 0.0;
  double faded_error_mean = 0.0;
  double faded_error_perceptron = 0.0;

  explicit LeafModel(std::size_t n_features = 0)
      : weights(n_features, 0.0), x_stats(n_features) {}

  double predict(std::span<const double> x) const;
  void update(std::span<const double> x, double y, double w, const HoeffdingTreeParams& p);

  nlohmann::json state() const;
  static LeafModel from_state(const nlohmann::json& j);
};

struct TreeNode {
  // Split nodes: attribute >= 0.
  int attribute = -1;
  double threshold = 0.0;
  std::unique_ptr<TreeNode> left;
  std::unique_ptr<TreeNode> right;

  // Leaves.
  TargetStats stats;
  LeafModel model;
  AttributeObservers observers;
  double last_attempt_weight = 0.0;

  int depth = 0;

  // Adaptive trees only.
  std::unique_ptr<Adwin> monitor;
  std::unique_ptr<TreeNode> alternate;

  bool is_leaf() const { return attribute < 0; }
  TreeNode* child_for(std::span<const double> x) const {
    return x[static_cast<std::size_t>(attribute)] <= threshold ? left.get() : right.get();
  }
};

class TreeGrower {
 public:
  TreeGrower(HoeffdingTreeParams params, std::uint64_t seed);

  void ensure_root(std::span<const double> x);
  std::unique_ptr<TreeNode> make_leaf(int depth, const LeafModel* inherit, const TargetStats& stats);

  static const TreeNode* leaf_for(const TreeNode* node, std::span<const double> x);
  static TreeNode* leaf_for(TreeNode* node, std::span<const double> x);

  double predict_leaf(const TreeNode& leaf, std::span<const double> x) const;
  double predict(std::span<const double> x) const;
  double predict_from(const TreeNode& node, std::span<const double> x) const;

  void learn_leaf(TreeNode& leaf, std::span<const double> x, double y, double w);
  /// Attempts a split once grace_period weight arrived since the last try.
  /// Returns true when the leaf became a split node.
  bool maybe_split(TreeNode& leaf);

  nlohmann::json node_state(const TreeNode& node) const;
  std::unique_ptr<TreeNode> node_from_state(const nlohmann::json& j) const;
  nlohmann::json state() const;
  static std::unique_ptr<TreeGrower> from_state(const nlohmann::json& j);

  static std::size_t count_leaves(const TreeNode* node);
  static std::size_t count_nodes(const TreeNode* node);
  static std::size_t max_depth(const TreeNode* node);

  HoeffdingTreeParams params;
  std::mt19937_64 rng;
  std::size_t n_features = 0;
  std::unique_ptr<TreeNode> root;
};

}  // namespace driftcast::online::detail
