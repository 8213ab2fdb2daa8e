#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "driftcast/regressor.hpp"

namespace driftcast::experiment {

/// A configured learner: identifier, resolved parameters and a seeded factory.
struct AlgorithmSpec {
  std::string id;
  std::string label;  // table name, e.g. "ARF"
  bool incremental = false;
  /// Stochastic learners run once per configured seed; the others once.
  bool stochastic = false;
  nlohmann::json params;
  std::function<std::unique_ptr<Regressor>(std::uint64_t seed)> make;
};

/// ht, hat, arf, pa, ols, ridge, cart, forest, gbrt, svr.
const std::vector<std::string>& known_algorithms();
const std::vector<std::string>& online_algorithms();

/// Builds the spec for `id` with overrides applied. Override keys address the
/// parameter JSON (nested objects with dots, e.g. "tree.grace_period"); values
/// are parsed according to the default's type. Throws ConfigError for an
/// unknown id, key or unparseable value.
AlgorithmSpec make_algorithm(const std::string& id, const std::map<std::string, std::string>& overrides = {});

}  // namespace driftcast::experiment
