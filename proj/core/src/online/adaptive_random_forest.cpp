#include "driftcast/online/adaptive_random_forest.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace driftcast::online {
namespace {

std::string rng_to_string(const std::mt19937_64& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

std::mt19937_64 rng_from_string(const std::string& s) {
  std::mt19937_64 rng;
  std::istringstream is(s);
  is >> rng;
  return rng;
}

}  // namespace

nlohmann::json AdaptiveRandomForestParams::to_json() const {
  return {{"ensemble_size", ensemble_size},
          {"poisson_lambda", poisson_lambda},
          {"resample", resample},
          {"max_features", max_features},
          {"warning_delta", warning_delta},
          {"drift_delta", drift_delta},
          {"detect_drift", detect_drift},
          {"tree", tree.to_json()}};
}

AdaptiveRandomForestParams AdaptiveRandomForestParams::from_json(const nlohmann::json& j) {
  AdaptiveRandomForestParams p;
  p.ensemble_size = j.at("ensemble_size").get<int>();
  p.poisson_lambda = j.at("poisson_lambda").get<double>();
  p.resample = j.at("resample").get<bool>();
  p.max_features = j.at("max_features").get<int>();
  p.warning_delta = j.at("warning_delta").get<double>();
  p.drift_delta = j.at("drift_delta").get<double>();
  p.detect_drift = j.at("detect_drift").get<bool>();
  p.tree = HoeffdingTreeParams::from_json(j.at("tree"));
  return p;
}

AdaptiveRandomForestRegressor::AdaptiveRandomForestRegressor(AdaptiveRandomForestParams params,
                                                             std::uint64_t seed)
    : params_(params), seed_(seed) {
  if (params_.ensemble_size < 1) throw std::invalid_argument("ensemble_size must be >= 1");
  if (params_.resample && !(params_.poisson_lambda > 0.0)) {
    throw std::invalid_argument("poisson_lambda must be > 0");
  }
  if (params_.max_features < -1) throw std::invalid_argument("max_features must be >= -1");
}

HoeffdingTreeRegressor AdaptiveRandomForestRegressor::fresh_tree(Member& member) const {
  HoeffdingTreeParams tp = params_.tree;
  if (params_.max_features == -1) {
    tp.max_features = 0;
  } else if (params_.max_features == 0) {
    tp.max_features = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_features_))));
  } else {
    tp.max_features = params_.max_features;
  }
  return HoeffdingTreeRegressor(tp, member.rng());
}

void AdaptiveRandomForestRegressor::initialise(std::size_t n_features) {
  n_features_ = n_features;
  // Per-member generators make each member's randomness independent of the
  // order in which members are updated.
  std::seed_seq seq{seed_, static_cast<std::uint64_t>(0x5eedf07e57ULL)};
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(params_.ensemble_size));
  {
    std::vector<std::uint32_t> raw(seeds.size() * 2);
    seq.generate(raw.begin(), raw.end());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      seeds[i] = (static_cast<std::uint64_t>(raw[2 * i]) << 32) | raw[2 * i + 1];
    }
  }
  members_.clear();
  members_.reserve(seeds.size());
  for (std::uint64_t s : seeds) {
    Member m{HoeffdingTreeRegressor(), std::nullopt, Adwin(AdwinParams{.delta = params_.warning_delta}),
             Adwin(AdwinParams{.delta = params_.drift_delta}), std::mt19937_64(s)};
    m.tree = fresh_tree(m);
    members_.push_back(std::move(m));
  }
}

void AdaptiveRandomForestRegressor::learn_one(std::span<const double> x, double y, double weight) {
  if (!std::isfinite(y)) throw std::invalid_argument("target must be finite");
  if (members_.empty()) {
    if (x.empty()) throw std::invalid_argument("feature vector is empty");
    initialise(x.size());
  }
  check_dimension(n_features_, x);

  for (auto& m : members_) {
    const double error = std::fabs(y - m.tree.predict_one(x));
    double k = 1.0;
    if (params_.resample) {
      std::poisson_distribution<int> poisson(params_.poisson_lambda);
      k = static_cast<double>(poisson(m.rng));
    }
    if (k > 0.0) {
      m.tree.learn_one(x, y, k * weight);
      if (m.background) m.background->learn_one(x, y, k * weight);
    }
    if (!params_.detect_drift) continue;

    const double warn_before = m.warning.estimation();
    if (m.warning.update(error).drift && m.warning.estimation() > warn_before) {
      m.background = fresh_tree(m);
      m.warning = Adwin(AdwinParams{.delta = params_.warning_delta});
      ++background_starts_;
    }
    const double drift_before = m.drift.estimation();
    if (m.drift.update(error).drift && m.drift.estimation() > drift_before) {
      if (m.background) {
        m.tree = std::move(*m.background);
        m.background.reset();
      } else {
        m.tree = fresh_tree(m);
      }
      m.warning = Adwin(AdwinParams{.delta = params_.warning_delta});
      m.drift = Adwin(AdwinParams{.delta = params_.drift_delta});
      ++replacements_;
    }
  }
}

double AdaptiveRandomForestRegressor::predict_one(std::span<const double> x) const {
  if (members_.empty()) return 0.0;
  check_dimension(n_features_, x);
  double sum = 0.0;
  for (const auto& m : members_) sum += m.tree.predict_one(x);
  return sum / static_cast<double>(members_.size());
}

nlohmann::json AdaptiveRandomForestRegressor::state() const {
  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : members_) {
    members.push_back({{"tree", m.tree.state()},
                       {"background", m.background ? m.background->state() : nlohmann::json(nullptr)},
                       {"warning", m.warning.state()},
                       {"drift", m.drift.state()},
                       {"rng", rng_to_string(m.rng)}});
  }
  return {{"params", params_.to_json()},
          {"seed", seed_},
          {"n_features", n_features_},
          {"members", std::move(members)},
          {"replacements", replacements_},
          {"background_starts", background_starts_}};
}

AdaptiveRandomForestRegressor AdaptiveRandomForestRegressor::from_state(const nlohmann::json& j) {
  AdaptiveRandomForestRegressor f(AdaptiveRandomForestParams::from_json(j.at("params")),
                                  j.at("seed").get<std::uint64_t>());
  f.n_features_ = j.at("n_features").get<std::size_t>();
  for (const auto& m : j.at("members")) {
    Member member{HoeffdingTreeRegressor::from_state(m.at("tree")), std::nullopt,
                  Adwin::from_state(m.at("warning")), Adwin::from_state(m.at("drift")),
                  rng_from_string(m.at("rng").get<std::string>())};
    if (!m.at("background").is_null()) member.background = HoeffdingTreeRegressor::from_state(m.at("background"));
    f.members_.push_back(std::move(member));
  }
  f.replacements_ = j.at("replacements").get<std::size_t>();
  f.background_starts_ = j.at("background_starts").get<std::size_t>();
  return f;
}

}  // namespace driftcast::online
