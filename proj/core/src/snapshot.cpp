#include "driftcast/snapshot.hpp"

#include <fstream>
#include <string>

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

namespace driftcast {

namespace {

constexpr const char* kFormat = "driftcast.model";

template <typename T>
std::unique_ptr<Regressor> boxed(const nlohmann::json& state) {
  return std::make_unique<T>(T::from_state(state));
}

}  // namespace

nlohmann::json make_snapshot(const Regressor& model) {
  return {{"format", kFormat},
          {"version", kSnapshotVersion},
          {"kind", std::string(model.kind())},
          {"state", model.state()}};
}

std::unique_ptr<Regressor> restore_snapshot(const nlohmann::json& envelope) {
  if (!envelope.is_object() || envelope.value("format", "") != kFormat) {
    throw SchemaError("not a model snapshot");
  }
  if (envelope.value("version", 0) != kSnapshotVersion) {
    throw SchemaError("unsupported snapshot version " + envelope.value("version", nlohmann::json()).dump());
  }
  const std::string kind = envelope.at("kind").get<std::string>();
  const nlohmann::json& state = envelope.at("state");
  if (kind == "hoeffding_tree") return boxed<online::HoeffdingTreeRegressor>(state);
  if (kind == "hoeffding_adaptive_tree") return boxed<online::HoeffdingAdaptiveTreeRegressor>(state);
  if (kind == "adaptive_random_forest") return boxed<online::AdaptiveRandomForestRegressor>(state);
  if (kind == "passive_aggressive") return boxed<online::PassiveAggressiveRegressor>(state);
  if (kind == "ols" || kind == "ridge") return boxed<batch::LinearRegression>(state);
  if (kind == "decision_tree") return boxed<batch::DecisionTreeRegressor>(state);
  if (kind == "random_forest") return boxed<batch::RandomForestRegressor>(state);
  if (kind == "gradient_boosting") return boxed<batch::GradientBoostingRegressor>(state);
  if (kind == "linear_svr") return boxed<batch::LinearSvr>(state);
  throw SchemaError("unknown model kind '" + kind + "'");
}

void save_snapshot(const std::filesystem::path& path, const Regressor& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << make_snapshot(model).dump() << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

std::unique_ptr<Regressor> load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  nlohmann::json envelope;
  try {
    in >> envelope;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  return restore_snapshot(envelope);
}

}  // namespace driftcast
