#include "driftcast/experiment/registry.hpp"

#include <charconv>

#include "driftcast/batch/cart.hpp"
#include "driftcast/batch/forest.hpp"
#include "driftcast/batch/gbrt.hpp"
#include "driftcast/batch/linear.hpp"
#include "driftcast/batch/linear_svr.hpp"
#include "driftcast/errors.hpp"
#include "driftcast/online/adaptive_random_forest.hpp"
#include "driftcast/online/hoeffding_adaptive_tree.hpp"
#include "driftcast/online/hoeffding_tree.hpp"
#include "driftcast/online/passive_aggressive.hpp"

namespace driftcast::experiment {

namespace {

struct Entry {
  const char* label;
  bool incremental;
  bool stochastic;
  nlohmann::json defaults;
  std::function<std::unique_ptr<Regressor>(const nlohmann::json&, std::uint64_t)> build;
};

const std::map<std::string, Entry>& entries() {
  static const std::map<std::string, Entry> table = [] {
    std::map<std::string, Entry> t;
    t["ht"] = {"HT", true, false, online::HoeffdingTreeParams{}.to_json(), [](const nlohmann::json& p, std::uint64_t s) {
                 return std::make_unique<online::HoeffdingTreeRegressor>(online::HoeffdingTreeParams::from_json(p), s);
               }};
    t["hat"] = {"HAT", true, false, online::HoeffdingAdaptiveTreeParams{}.to_json(),
                [](const nlohmann::json& p, std::uint64_t s) {
                  return std::make_unique<online::HoeffdingAdaptiveTreeRegressor>(
                      online::HoeffdingAdaptiveTreeParams::from_json(p), s);
                }};
    t["arf"] = {"ARF", true, true, online::AdaptiveRandomForestParams{}.to_json(),
                [](const nlohmann::json& p, std::uint64_t s) {
                  return std::make_unique<online::AdaptiveRandomForestRegressor>(
                      online::AdaptiveRandomForestParams::from_json(p), s);
                }};
    t["pa"] = {"PA", true, false, online::PassiveAggressiveParams{}.to_json(), [](const nlohmann::json& p, std::uint64_t) {
                 return std::make_unique<online::PassiveAggressiveRegressor>(
                     online::PassiveAggressiveParams::from_json(p));
               }};
    t["ols"] = {"Linear", false, false, {{"penalty", 0.0}}, [](const nlohmann::json& p, std::uint64_t) {
                  return std::make_unique<batch::LinearRegression>(p.at("penalty").get<double>());
                }};
    t["ridge"] = {"Ridge", false, false, {{"penalty", 1.0}}, [](const nlohmann::json& p, std::uint64_t) {
                    return std::make_unique<batch::LinearRegression>(p.at("penalty").get<double>());
                  }};
    t["cart"] = {"Decision Tree", false, false, batch::CartParams{}.to_json(), [](const nlohmann::json& p, std::uint64_t s) {
                   return std::make_unique<batch::DecisionTreeRegressor>(batch::CartParams::from_json(p), s);
                 }};
    t["forest"] = {"Random Forest", false, true, batch::ForestParams{}.to_json(), [](const nlohmann::json& p, std::uint64_t s) {
                     return std::make_unique<batch::RandomForestRegressor>(batch::ForestParams::from_json(p), s);
                   }};
    t["gbrt"] = {"Gradient Boosting", false, true, batch::GbrtParams{}.to_json(), [](const nlohmann::json& p, std::uint64_t s) {
                   return std::make_unique<batch::GradientBoostingRegressor>(batch::GbrtParams::from_json(p), s);
                 }};
    t["svr"] = {"Linear SVR", false, true, batch::LinearSvrParams{}.to_json(), [](const nlohmann::json& p, std::uint64_t s) {
                  return std::make_unique<batch::LinearSvr>(batch::LinearSvrParams::from_json(p), s);
                }};
    return t;
  }();
  return table;
}

nlohmann::json parse_like(const nlohmann::json& current, const std::string& where, const std::string& text) {
  auto fail = [&](const char* expected) -> nlohmann::json {
    throw ConfigError(where + ": expected " + expected + ", got '" + text + "'");
  };
  const char* end = text.data() + text.size();
  if (current.is_boolean()) {
    if (text == "true") return true;
    if (text == "false") return false;
    return fail("true or false");
  }
  if (current.is_number_unsigned()) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) return fail("a non-negative integer");
    return v;
  }
  if (current.is_number_integer()) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) return fail("an integer");
    return v;
  }
  if (current.is_number_float()) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) return fail("a number");
    return v;
  }
  if (current.is_string()) return text;
  return fail("a scalar");
}

}  // namespace

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> ids{"ht", "hat", "arf", "pa", "ols", "ridge", "cart", "forest", "gbrt", "svr"};
  return ids;
}

const std::vector<std::string>& online_algorithms() {
  static const std::vector<std::string> ids{"ht", "hat", "arf", "pa"};
  return ids;
}

AlgorithmSpec make_algorithm(const std::string& id, const std::map<std::string, std::string>& overrides) {
  const auto it = entries().find(id);
  if (it == entries().end()) throw ConfigError("unknown algorithm '" + id + "'");
  const Entry& e = it->second;
  nlohmann::json params = e.defaults;
  for (const auto& [key, text] : overrides) {
    const std::string where = "algorithm." + id + "." + key;
    nlohmann::json::json_pointer ptr("/" + [&] {
      std::string p = key;
      for (auto& ch : p) {
        if (ch == '.') ch = '/';
      }
      return p;
    }());
    if (!params.contains(ptr) || params.at(ptr).is_object()) throw ConfigError("unknown parameter " + where);
    params[ptr] = parse_like(params.at(ptr), where, text);
  }
  // Validate eagerly so bad values surface as configuration errors.
  try {
    (void)e.build(params, 0);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError("algorithm." + id + ": " + ex.what());
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError("algorithm." + id + ": " + ex.what());
  }
  AlgorithmSpec spec;
  spec.id = id;
  spec.label = e.label;
  spec.incremental = e.incremental;
  // Trees that sample attributes become seed dependent.
  const auto sampled = [&](const char* pointer) {
    const nlohmann::json::json_pointer ptr(pointer);
    return params.contains(ptr) && params.at(ptr).get<int>() != 0;
  };
  spec.stochastic = e.stochastic || sampled("/max_features") || sampled("/tree/max_features");
  spec.params = params;
  spec.make = [build = e.build, params](std::uint64_t seed) { return build(params, seed); };
  return spec;
}

}  // namespace driftcast::experiment
