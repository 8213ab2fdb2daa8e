#pragma once

#include <filesystem>
#include <memory>

#include <nlohmann/json.hpp>

#include "driftcast/regressor.hpp"

namespace driftcast {

inline constexpr int kSnapshotVersion = 1;

/// {"format": "driftcast.model", "version": 1, "kind": ..., "state": ...}
nlohmann::json make_snapshot(const Regressor& model);

/// Rebuilds any model produced by make_snapshot. Throws SchemaError for an
/// unknown format, version or kind.
std::unique_ptr<Regressor> restore_snapshot(const nlohmann::json& envelope);

void save_snapshot(const std::filesystem::path& path, const Regressor& model);
std::unique_ptr<Regressor> load_snapshot(const std::filesystem::path& path);

}  // namespace driftcast
