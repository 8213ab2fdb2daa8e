#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "driftcast/evaluate/metrics.hpp"

namespace driftcast::experiment {

inline constexpr const char* kAll = "ALL";
inline constexpr const char* kMean = "MEAN";
inline constexpr const char* kNoSeed = "-";

/// One line of a results table. Leaf rows carry a country and an ISO
/// milestone; MEAN rows aggregate leaf rows of the same algorithm, mode,
/// scheme and seed (per country, then over countries as country "ALL").
/// Rows with seed "MEAN" average the per-seed rows of the same key.
struct ResultRow {
  std::string algorithm;
  std::string mode;
  std::string scheme;
  std::string country;
  std::string milestone;
  std::optional<double> mape;
  double mae = 0.0;
  double rmse = 0.0;
  double seconds = 0.0;
  std::size_t n_scored = 0;
  std::size_t n_skipped = 0;
  std::string seed;

  bool is_leaf() const { return milestone != kMean && seed != kMean; }
  evaluate::MetricsReport report() const;
};

ResultRow make_row(std::string algorithm, std::string mode, std::string scheme, std::string country,
                   std::string milestone, std::string seed, const evaluate::MetricsReport& m);

/// Header plus one line per row; undefined MAPE is written as "NA".
/// Numbers use 17 significant digits, seconds 3 decimals.
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
/// Throws ParseError for malformed lines and SchemaError for a wrong header.
std::vector<ResultRow> read_results_csv(std::istream& in);

/// Appends the MEAN rows for a block of leaf rows sharing algorithm, mode,
/// scheme and seed: one per country plus the grand mean (country ALL).
void append_mean_rows(std::vector<ResultRow>& rows, const std::vector<ResultRow>& leaves);

/// Seed-mean rows: for each (algorithm, mode, scheme, country, milestone) key
/// present under several seeds, the unweighted mean across those seeds.
std::vector<ResultRow> seed_mean_rows(const std::vector<ResultRow>& rows);

}  // namespace driftcast::experiment
