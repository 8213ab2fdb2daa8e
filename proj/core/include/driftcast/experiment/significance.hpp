#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "driftcast/evaluate/stats.hpp"
#include "driftcast/experiment/results.hpp"

namespace driftcast::experiment {

struct SignificanceResult {
  std::string algorithm_a;
  std::string algorithm_b;
  std::string mode;
  std::string scheme;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::optional<evaluate::StatTestResult> normality_a;
  std::optional<evaluate::StatTestResult> normality_b;
  /// Welch when both samples pass normality at 0.05, else Mann-Whitney.
  std::optional<evaluate::StatTestResult> test;
  std::string skipped_reason;  // set when `test` is absent
};

/// Per-country MAPE of an algorithm: its per-country MEAN rows (seed means
/// when several seeds ran), in row order, undefined values left out.
std::vector<double> country_mape_vector(const std::vector<ResultRow>& rows, const std::string& algorithm,
                                        const std::string& mode, const std::string& scheme);

/// Compares each pair within every (mode, scheme) group present in `rows`.
/// Empty `pairs` means every unordered pair of algorithms in the group.
std::vector<SignificanceResult> run_significance(const std::vector<ResultRow>& rows,
                                                 const std::vector<std::pair<std::string, std::string>>& pairs);

/// Tests one pair of samples with the normality-based routing above.
SignificanceResult compare_samples(const std::vector<double>& a, const std::vector<double>& b);

void write_significance_csv(std::ostream& out, const std::vector<SignificanceResult>& results);

}  // namespace driftcast::experiment
