#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "driftcast/experiment/config.hpp"
#include "driftcast/experiment/registry.hpp"
#include "driftcast/experiment/results.hpp"
#include "driftcast/ingest.hpp"
#include "driftcast/windowing.hpp"

namespace driftcast::experiment {

/// The selected countries with their examples and the milestone schedule.
struct Dataset {
  std::size_t n_records = 0;
  CountrySelection selection;
  std::vector<CaseSeries> series;  // selected, in selection order
  std::map<std::string, std::vector<WindowedExample>> examples;
  MilestoneSchedule schedule;
};

Dataset prepare_dataset(const RunConfig& config, std::span<const RawDailyRecord> records);
/// Reads config.data_path. Throws IoError, SchemaError, ParseError or ConfigError.
Dataset load_dataset(const RunConfig& config);

struct ExperimentOutput {
  std::string name;
  std::vector<ResultRow> rows;
  std::vector<std::string> warnings;
  nlohmann::json manifest;
};

/// Worker threads: $DRIFTCAST_WORKERS when set to a positive integer,
/// otherwise the hardware concurrency.
unsigned worker_count();

/// Resolves the roster: config.run.algorithms or `fallback` when empty.
std::vector<AlgorithmSpec> resolve_roster(const RunConfig& config, const std::vector<std::string>& fallback);

/// Evaluates every roster entry in the given mode and schemes over all
/// (country, milestone, seed) combinations. Splits with an empty train or test
/// side produce no row and a warning. Rows come out grouped by algorithm,
/// scheme and seed, leaves first, then MEAN rows, then seed means.
ExperimentOutput run_roster(const std::string& name, const RunConfig& config, const Dataset& data,
                            const std::vector<AlgorithmSpec>& roster, Mode mode,
                            const std::vector<Scheme>& schemes);

/// Single-country hold-out. run.mode and run.scheme must be unset or sc/holdout.
ExperimentOutput run_experiment_1(const RunConfig& config, const Dataset& data);
/// Multi-country hold-out. run.mode and run.scheme must be unset or mc/holdout.
ExperimentOutput run_experiment_2(const RunConfig& config, const Dataset& data);
/// Paired hold-out and prequential rows for online learners in run.mode
/// (default mc). run.scheme must be unset or prequential; batch learners in the
/// roster raise ConfigError.
ExperimentOutput run_experiment_3(const RunConfig& config, const Dataset& data);

/// Writes <name>_results.csv, <name>_manifest.json,
/// <name>_mape_by_milestone.csv and <name>_mape_by_country.csv.
void write_outputs(const ExperimentOutput& output, const std::filesystem::path& dir);

/// Rows used for headline figures: seed-mean rows where an algorithm ran with
/// several seeds, otherwise its single-seed rows.
std::vector<ResultRow> headline_rows(const std::vector<ResultRow>& rows);

/// Library version string.
const char* version();

}  // namespace driftcast::experiment
