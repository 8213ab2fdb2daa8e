#include "driftcast/batch/cart.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace driftcast::batch {

nlohmann::json CartParams::to_json() const {
  return {{"max_depth", max_depth},
          {"min_samples_split", min_samples_split},
          {"min_samples_leaf", min_samples_leaf},
          {"max_features", max_features}};
}

CartParams CartParams::from_json(const nlohmann::json& j) {
  CartParams p;
  p.max_depth = j.at("max_depth").get<int>();
  p.min_samples_split = j.at("min_samples_split").get<int>();
  p.min_samples_leaf = j.at("min_samples_leaf").get<int>();
  p.max_features = j.at("max_features").get<int>();
  return p;
}

PresortedColumns::PresortedColumns(const TrainingSet& data)
    : n_rows_(data.size()), orders_(data.size() * data.n_features) {
  std::vector<std::uint32_t> idx(n_rows_);
  for (std::size_t f = 0; f < data.n_features; ++f) {
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      return data.at(a, f) < data.at(b, f);
    });
    std::copy(idx.begin(), idx.end(), orders_.begin() + static_cast<std::ptrdiff_t>(f * n_rows_));
  }
}

std::span<const std::uint32_t> PresortedColumns::order(std::size_t feature) const {
  return {orders_.data() + feature * n_rows_, n_rows_};
}

namespace {

struct Segment {
  std::size_t begin;
  std::size_t end;
  int node;
  int depth;
};

struct BestSplit {
  int attribute = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

}  // namespace

CartTree CartTree::grow(const TrainingSet& data, std::span<const double> targets,
                        std::span<const std::uint32_t> rows, const CartParams& params,
                        const PresortedColumns& presorted, std::mt19937_64* rng) {
  if (rows.empty()) throw std::invalid_argument("cannot grow a tree on zero rows");
  const std::size_t d = data.n_features;
  const std::size_t n = rows.size();
  const auto m = static_cast<std::size_t>(params.max_features);
  const bool subsample_features = m > 0 && m < d;
  if (subsample_features && rng == nullptr) throw std::invalid_argument("feature sampling needs an rng");

  // Per-feature ordering of the sample, duplicates expanded.
  std::vector<std::uint32_t> multiplicity(data.size(), 0);
  for (auto r : rows) ++multiplicity[r];
  std::vector<std::uint32_t> orders(n * d);
  for (std::size_t f = 0; f < d; ++f) {
    std::size_t k = f * n;
    for (auto r : presorted.order(f)) {
      for (std::uint32_t c = 0; c < multiplicity[r]; ++c) orders[k++] = r;
    }
  }
  std::vector<std::uint32_t> scratch(n);
  std::vector<char> goes_left(data.size(), 0);
  std::vector<int> features(d);
  std::iota(features.begin(), features.end(), 0);

  CartTree tree;
  tree.nodes_.push_back({});
  std::vector<Segment> stack{{0, n, 0, 0}};
  while (!stack.empty()) {
    const Segment seg = stack.back();
    stack.pop_back();
    const std::size_t count = seg.end - seg.begin;
    const std::span<const std::uint32_t> base(orders.data() + seg.begin, count);

    double sum = 0.0;
    double lo = targets[base[0]];
    double hi = lo;
    for (auto r : base) {
      sum += targets[r];
      lo = std::min(lo, targets[r]);
      hi = std::max(hi, targets[r]);
    }
    const double mean = sum / static_cast<double>(count);
    Node& node = tree.nodes_[static_cast<std::size_t>(seg.node)];
    node.value = mean;
    node.n_samples = static_cast<std::uint32_t>(count);

    if (count < static_cast<std::size_t>(std::max(2, params.min_samples_split)) || lo == hi ||
        (params.max_depth > 0 && seg.depth >= params.max_depth)) {
      continue;
    }

    std::vector<int> candidates;
    if (subsample_features) {
      for (std::size_t i = 0; i < m; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, d - 1);
        std::swap(features[i], features[pick(*rng)]);
      }
      candidates.assign(features.begin(), features.begin() + static_cast<std::ptrdiff_t>(m));
      std::sort(candidates.begin(), candidates.end());
    } else {
      candidates = features;
    }

    BestSplit best;
    const auto min_leaf = static_cast<std::size_t>(std::max(1, params.min_samples_leaf));
    const double total = static_cast<double>(count);
    for (int f : candidates) {
      const auto fu = static_cast<std::size_t>(f);
      const std::uint32_t* ord = orders.data() + fu * n + seg.begin;
      double left_sum = 0.0;  // of centred targets
      for (std::size_t i = 0; i + 1 < count; ++i) {
        left_sum += targets[ord[i]] - mean;
        const double xi = data.at(ord[i], fu);
        const double xn = data.at(ord[i + 1], fu);
        if (!(xi < xn)) continue;
        const std::size_t n_left = i + 1;
        const std::size_t n_right = count - n_left;
        if (n_left < min_leaf || n_right < min_leaf) continue;
        // SSE(parent) - SSE(left) - SSE(right) for centred sums.
        const double gain = left_sum * left_sum * total /
                            (static_cast<double>(n_left) * static_cast<double>(n_right));
        if (gain > best.gain * (1.0 + kGainTieTolerance) && gain > 0.0) {
          double t = 0.5 * (xi + xn);
          if (!(t < xn)) t = xi;
          best = {f, t, gain};
        }
      }
    }
    if (best.attribute < 0) continue;

    const auto attr = static_cast<std::size_t>(best.attribute);
    for (auto r : base) goes_left[r] = data.at(r, attr) <= best.threshold ? 1 : 0;
    std::size_t n_left = 0;
    for (std::size_t f = 0; f < d; ++f) {
      std::uint32_t* ord = orders.data() + f * n + seg.begin;
      std::size_t l = 0;
      std::size_t r = 0;
      for (std::size_t i = 0; i < count; ++i) {
        if (goes_left[ord[i]]) {
          ord[l++] = ord[i];
        } else {
          scratch[r++] = ord[i];
        }
      }
      std::copy(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(r), ord + l);
      n_left = l;
    }

    const int left_id = static_cast<int>(tree.nodes_.size());
    tree.nodes_.push_back({});
    tree.nodes_.push_back({});
    Node& parent = tree.nodes_[static_cast<std::size_t>(seg.node)];
    parent.attribute = best.attribute;
    parent.threshold = best.threshold;
    parent.left = left_id;
    parent.right = left_id + 1;
    stack.push_back({seg.begin + n_left, seg.end, left_id + 1, seg.depth + 1});
    stack.push_back({seg.begin, seg.begin + n_left, left_id, seg.depth + 1});
  }
  return tree;
}

double CartTree::predict(std::span<const double> x) const {
  if (nodes_.empty()) return 0.0;
  std::size_t i = 0;
  while (nodes_[i].attribute >= 0) {
    const Node& node = nodes_[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(node.attribute)] <= node.threshold ? node.left
                                                                                               : node.right);
  }
  return nodes_[i].value;
}

std::size_t CartTree::n_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.attribute < 0; }));
}

nlohmann::json CartTree::state() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : nodes_) nodes.push_back({n.attribute, n.threshold, n.left, n.right, n.value, n.n_samples});
  return nodes;
}

CartTree CartTree::from_state(const nlohmann::json& j) {
  CartTree t;
  for (const auto& n : j) {
    t.nodes_.push_back({n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(), n.at(3).get<int>(),
                        n.at(4).get<double>(), n.at(5).get<std::uint32_t>()});
  }
  return t;
}

DecisionTreeRegressor::DecisionTreeRegressor(CartParams params, std::uint64_t seed)
    : params_(params), seed_(seed) {}

void DecisionTreeRegressor::fit(const TrainingSet& data) {
  if (data.size() == 0) throw std::invalid_argument("decision tree needs at least one example");
  n_features_ = data.n_features;
  std::vector<std::uint32_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), 0u);
  PresortedColumns presorted(data);
  std::mt19937_64 rng(seed_);
  tree_ = CartTree::grow(data, data.y, rows, params_, presorted, &rng);
}

double DecisionTreeRegressor::predict_one(std::span<const double> x) const {
  check_dimension(n_features_, x);
  return tree_.predict(x);
}

nlohmann::json DecisionTreeRegressor::state() const {
  return {{"params", params_.to_json()}, {"seed", seed_}, {"n_features", n_features_}, {"tree", tree_.state()}};
}

DecisionTreeRegressor DecisionTreeRegressor::from_state(const nlohmann::json& j) {
  DecisionTreeRegressor m(CartParams::from_json(j.at("params")), j.at("seed").get<std::uint64_t>());
  m.n_features_ = j.at("n_features").get<std::size_t>();
  m.tree_ = CartTree::from_state(j.at("tree"));
  return m;
}

}  // namespace driftcast::batch
