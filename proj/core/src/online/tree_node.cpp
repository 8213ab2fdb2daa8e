#include "tree_node.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace driftcast::online {

std::string_view to_string(LeafPrediction mode) {
  switch (mode) {
    case LeafPrediction::mean: return "mean";
    case LeafPrediction::perceptron: return "perceptron";
    case LeafPrediction::adaptive: return "adaptive";
  }
  return "adaptive";
}

LeafPrediction leaf_prediction_from_string(std::string_view text) {
  if (text == "mean") return LeafPrediction::mean;
  if (text == "perceptron") return LeafPrediction::perceptron;
  if (text == "adaptive") return LeafPrediction::adaptive;
  throw std::invalid_argument("unknown leaf prediction mode '" + std::string(text) + "'");
}

nlohmann::json HoeffdingTreeParams::to_json() const {
  return {{"grace_period", grace_period},
          {"split_confidence", split_confidence},
          {"tie_threshold", tie_threshold},
          {"leaf_prediction", std::string(to_string(leaf_prediction))},
          {"learning_ratio", learning_ratio},
          {"learning_ratio_decay", learning_ratio_decay},
          {"error_fading", error_fading},
          {"min_branch_weight", min_branch_weight},
          {"histogram_bins", histogram_bins},
          {"max_depth", max_depth},
          {"max_features", max_features}};
}

HoeffdingTreeParams HoeffdingTreeParams::from_json(const nlohmann::json& j) {
  HoeffdingTreeParams p;
  p.grace_period = j.at("grace_period").get<int>();
  p.split_confidence = j.at("split_confidence").get<double>();
  p.tie_threshold = j.at("tie_threshold").get<double>();
  p.leaf_prediction = leaf_prediction_from_string(j.at("leaf_prediction").get<std::string>());
  p.learning_ratio = j.at("learning_ratio").get<double>();
  p.learning_ratio_decay = j.at("learning_ratio_decay").get<double>();
  p.error_fading = j.at("error_fading").get<double>();
  p.min_branch_weight = j.at("min_branch_weight").get<double>();
  p.histogram_bins = j.at("histogram_bins").get<std::size_t>();
  p.max_depth = j.at("max_depth").get<int>();
  p.max_features = j.at("max_features").get<int>();
  return p;
}

namespace detail {
namespace {

double standardized(const TargetStats& s, double v) {
  const double sd = s.stddev();
  return sd > 0.0 ? (v - s.mean) / sd : 0.0;
}

}  // namespace

double LeafModel::predict(std::span<const double> x) const {
  if (y_stats.weight <= 0.0) return 0.0;
  const double sd_y = y_stats.stddev();
  if (sd_y <= 0.0) return y_stats.mean;
  double acc = bias;
  for (std::size_t j = 0; j < weights.size(); ++j) acc += weights[j] * standardized(x_stats[j], x[j]);
  return y_stats.mean + sd_y * acc;
}

void LeafModel::update(std::span<const double> x, double y, double w, const HoeffdingTreeParams& p) {
  for (std::size_t j = 0; j < x_stats.size(); ++j) x_stats[j].add(x[j], w);
  y_stats.add(y, w);
  const double sd_y = y_stats.stddev();
  if (sd_y <= 0.0) return;

  double acc = bias;
  for (std::size_t j = 0; j < weights.size(); ++j) acc += weights[j] * standardized(x_stats[j], x[j]);
  const double residual = (y - y_stats.mean) / sd_y - acc;
  const double step = w * p.learning_ratio / (1.0 + n_updates * p.learning_ratio_decay);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    weights[j] += step * residual * standardized(x_stats[j], x[j]);
  }
  bias += step * residual;
  n_updates += w;
}

nlohmann::json LeafModel::state() const {
  nlohmann::json xs = nlohmann::json::array();
  for (const auto& s : x_stats) xs.push_back(s.state());
  return {{"weights", weights},
          {"bias", bias},
          {"x_stats", std::move(xs)},
          {"y_stats", y_stats.state()},
          {"n_updates", n_updates},
          {"faded_error_mean", faded_error_mean},
          {"faded_error_perceptron", faded_error_perceptron}};
}

LeafModel LeafModel::from_state(const nlohmann::json& j) {
  LeafModel m;
  m.weights = j.at("weights").get<std::vector<double>>();
  m.bias = j.at("bias").get<double>();
  for (const auto& s : j.at("x_stats")) m.x_stats.push_back(TargetStats::from_state(s));
  m.y_stats = TargetStats::from_state(j.at("y_stats"));
  m.n_updates = j.at("n_updates").get<double>();
  m.faded_error_mean = j.at("faded_error_mean").get<double>();
  m.faded_error_perceptron = j.at("faded_error_perceptron").get<double>();
  return m;
}

TreeGrower::TreeGrower(HoeffdingTreeParams p, std::uint64_t seed) : params(p), rng(seed) {
  if (params.grace_period < 1) throw std::invalid_argument("grace_period must be >= 1");
  if (!(params.split_confidence > 0.0 && params.split_confidence < 1.0)) {
    throw std::invalid_argument("split_confidence must lie in (0, 1)");
  }
  if (params.max_features < 0 || params.max_depth < 0) {
    throw std::invalid_argument("max_features and max_depth must be >= 0");
  }
}

void TreeGrower::ensure_root(std::span<const double> x) {
  if (root) {
    check_dimension(n_features, x);
    return;
  }
  if (x.empty()) throw std::invalid_argument("feature vector is empty");
  n_features = x.size();
  LeafModel fresh(n_features);
  root = make_leaf(0, &fresh, {});
}

std::unique_ptr<TreeNode> TreeGrower::make_leaf(int depth, const LeafModel* inherit,
                                                const TargetStats& stats) {
  auto leaf = std::make_unique<TreeNode>();
  leaf->depth = depth;
  leaf->stats = stats;
  leaf->model = inherit ? *inherit : LeafModel(n_features);
  leaf->model.faded_error_mean = 0.0;
  leaf->model.faded_error_perceptron = 0.0;

  std::vector<int> features(n_features);
  std::iota(features.begin(), features.end(), 0);
  const auto m = static_cast<std::size_t>(params.max_features);
  if (m > 0 && m < n_features) {
    // Partial Fisher-Yates: the first m slots become a uniform sample.
    for (std::size_t i = 0; i < m; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n_features - 1);
      std::swap(features[i], features[pick(rng)]);
    }
    features.resize(m);
    std::sort(features.begin(), features.end());
  }
  leaf->observers = AttributeObservers(std::move(features), params.histogram_bins);
  return leaf;
}

const TreeNode* TreeGrower::leaf_for(const TreeNode* node, std::span<const double> x) {
  while (node && !node->is_leaf()) node = node->child_for(x);
  return node;
}

TreeNode* TreeGrower::leaf_for(TreeNode* node, std::span<const double> x) {
  while (node && !node->is_leaf()) node = node->child_for(x);
  return node;
}

double TreeGrower::predict_leaf(const TreeNode& leaf, std::span<const double> x) const {
  if (leaf.stats.weight <= 0.0 && leaf.model.y_stats.weight <= 0.0) return 0.0;
  switch (params.leaf_prediction) {
    case LeafPrediction::mean:
      return leaf.stats.mean;
    case LeafPrediction::perceptron:
      return leaf.model.predict(x);
    case LeafPrediction::adaptive:
      return leaf.model.faded_error_perceptron < leaf.model.faded_error_mean ? leaf.model.predict(x)
                                                                             : leaf.stats.mean;
  }
  return leaf.stats.mean;
}

double TreeGrower::predict(std::span<const double> x) const {
  if (!root) return 0.0;
  check_dimension(n_features, x);
  return predict_from(*root, x);
}

double TreeGrower::predict_from(const TreeNode& node, std::span<const double> x) const {
  return predict_leaf(*leaf_for(&node, x), x);
}

void TreeGrower::learn_leaf(TreeNode& leaf, std::span<const double> x, double y, double w) {
  if (params.leaf_prediction == LeafPrediction::adaptive && leaf.stats.weight > 0.0) {
    const double f = params.error_fading;
    leaf.model.faded_error_mean = f * leaf.model.faded_error_mean + w * std::fabs(y - leaf.stats.mean);
    leaf.model.faded_error_perceptron =
        f * leaf.model.faded_error_perceptron + w * std::fabs(y - leaf.model.predict(x));
  }
  leaf.stats.add(y, w);
  leaf.observers.add(x, y, w);
  if (params.leaf_prediction != LeafPrediction::mean) leaf.model.update(x, y, w, params);
}

bool TreeGrower::maybe_split(TreeNode& leaf) {
  const double seen = leaf.observers.weight();
  if (seen - leaf.last_attempt_weight < params.grace_period) return false;
  leaf.last_attempt_weight = seen;
  if (params.max_depth > 0 && leaf.depth >= params.max_depth) return false;

  const auto candidates = leaf.observers.best_per_attribute(params.min_branch_weight);
  const auto decision = decide_split(candidates, seen, params.split_confidence, params.tie_threshold);
  if (!decision.split) return false;

  const SplitCandidate& best = *decision.best;
  leaf.left = make_leaf(leaf.depth + 1, &leaf.model, best.left);
  leaf.right = make_leaf(leaf.depth + 1, &leaf.model, best.right);
  leaf.attribute = best.attribute;
  leaf.threshold = best.threshold;
  leaf.observers = AttributeObservers();
  leaf.model = LeafModel();
  leaf.monitor.reset();
  return true;
}

nlohmann::json TreeGrower::node_state(const TreeNode& node) const {
  nlohmann::json j{{"depth", node.depth}};
  if (node.is_leaf()) {
    j["stats"] = node.stats.state();
    j["model"] = node.model.state();
    j["observers"] = node.observers.state();
    j["last_attempt_weight"] = node.last_attempt_weight;
  } else {
    j["attribute"] = node.attribute;
    j["threshold"] = node.threshold;
    j["left"] = node_state(*node.left);
    j["right"] = node_state(*node.right);
  }
  if (node.monitor) j["monitor"] = node.monitor->state();
  if (node.alternate) j["alternate"] = node_state(*node.alternate);
  return j;
}

std::unique_ptr<TreeNode> TreeGrower::node_from_state(const nlohmann::json& j) const {
  auto node = std::make_unique<TreeNode>();
  node->depth = j.at("depth").get<int>();
  if (j.contains("attribute")) {
    node->attribute = j.at("attribute").get<int>();
    node->threshold = j.at("threshold").get<double>();
    node->left = node_from_state(j.at("left"));
    node->right = node_from_state(j.at("right"));
  } else {
    node->stats = TargetStats::from_state(j.at("stats"));
    node->model = LeafModel::from_state(j.at("model"));
    node->observers = AttributeObservers::from_state(j.at("observers"));
    node->last_attempt_weight = j.at("last_attempt_weight").get<double>();
  }
  if (j.contains("monitor")) node->monitor = std::make_unique<Adwin>(Adwin::from_state(j.at("monitor")));
  if (j.contains("alternate")) node->alternate = node_from_state(j.at("alternate"));
  return node;
}

nlohmann::json TreeGrower::state() const {
  std::ostringstream rng_state;
  rng_state << rng;
  nlohmann::json j{{"params", params.to_json()}, {"rng", rng_state.str()}, {"n_features", n_features}};
  j["root"] = root ? node_state(*root) : nlohmann::json(nullptr);
  return j;
}

std::unique_ptr<TreeGrower> TreeGrower::from_state(const nlohmann::json& j) {
  auto g = std::make_unique<TreeGrower>(HoeffdingTreeParams::from_json(j.at("params")), 0);
  std::istringstream rng_state(j.at("rng").get<std::string>());
  rng_state >> g->rng;
  g->n_features = j.at("n_features").get<std::size_t>();
  if (!j.at("root").is_null()) g->root = g->node_from_state(j.at("root"));
  return g;
}

std::size_t TreeGrower::count_leaves(const TreeNode* node) {
  if (!node) return 0;
  if (node->is_leaf()) return 1;
  return count_leaves(node->left.get()) + count_leaves(node->right.get());
}

std::size_t TreeGrower::count_nodes(const TreeNode* node) {
  if (!node) return 0;
  if (node->is_leaf()) return 1;
  return 1 + count_nodes(node->left.get()) + count_nodes(node->right.get());
}

std::size_t TreeGrower::max_depth(const TreeNode* node) {
  if (!node || node->is_leaf()) return 0;
  return 1 + std::max(max_depth(node->left.get()), max_depth(node->right.get()));
}

}  // namespace detail
}  // namespace driftcast::online
