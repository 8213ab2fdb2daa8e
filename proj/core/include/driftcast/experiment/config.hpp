#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "driftcast/date.hpp"
#include "driftcast/ingest.hpp"
#include "driftcast/windowing.hpp"

namespace driftcast::experiment {

enum class Mode { sc, mc };
enum class Scheme { holdout, prequential };

std::string_view to_string(Mode m);
std::string_view to_string(Scheme s);
Mode mode_from_string(std::string_view text);
Scheme scheme_from_string(std::string_view text);

struct SelectionConfig {
  Date as_of = Date::from_ymd(2020, 11, 30);
  int min_months = 8;
  int top_k = 50;
};

struct MilestoneConfig {
  Date final_milestone = Date::from_ymd(2020, 10, 31);
  int count = 8;
  int test_span_days = 30;
};

struct RunSettings {
  /// Unset means the experiment's own (exp1: sc/holdout, exp2: mc/holdout,
  /// exp3: mc/prequential).
  std::optional<Mode> mode;
  std::optional<Scheme> scheme;
  /// Empty means the experiment's default roster.
  std::vector<std::string> algorithms;
  std::vector<std::uint64_t> seeds{0};
  std::filesystem::path output_dir = "results";
  /// false writes 0 seconds so repeated runs are byte-identical.
  bool record_timing = true;
  /// "a:b" pairs for the significance step; empty means every pair.
  std::vector<std::pair<std::string, std::string>> significance_pairs;
};

/// Everything a run needs. Loaded from an INI-style file:
///
///   [data]        path
///   [columns]     date day month year cases deaths country geo_id population
///   [selection]   as_of min_months top_k
///   [window]      window horizon avg_len
///   [milestones]  final count test_span_days
///   [run]         mode scheme algorithms seeds output_dir record_timing
///                 significance_pairs
///   [algorithm.<id>]  parameter overrides, checked against the registry
///
/// Unknown sections or keys raise ConfigError.
struct RunConfig {
  std::filesystem::path data_path;
  ColumnMapping columns;
  SelectionConfig selection;
  WindowParams window;
  MilestoneConfig milestones;
  RunSettings run;
  std::map<std::string, std::map<std::string, std::string>> algorithm_overrides;

  nlohmann::json to_json() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Applies one "section.key=value" override (the section may itself contain
/// a dot, as in "algorithm.arf.ensemble_size=5"). Throws ConfigError.
void apply_override(RunConfig& config, std::string_view assignment);

}  // namespace driftcast::experiment
