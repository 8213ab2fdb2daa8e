#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace driftcast::evaluate {

struct MetricsReport {
  std::optional<double> mape;  // percent; absent when every target is zero
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t n_scored = 0;               // pairs with a non-zero target
  std::size_t n_skipped_zero_target = 0;  // pairs left out of MAPE
  double wall_seconds = 0.0;
  bool empty = false;  // no pairs at all; error fields are meaningless
  /// Set on aggregates: constituents whose MAPE was undefined.
  std::size_t n_undefined_mape = 0;

  std::size_t n_pairs() const { return n_scored + n_skipped_zero_target; }
};

/// MAE and RMSE over all pairs; MAPE over pairs whose target is non-zero.
/// Throws std::invalid_argument when the spans differ in length. No pairs
/// gives an `empty` report.
MetricsReport compute_metrics(std::span<const double> targets, std::span<const double> predictions);

/// Unweighted mean of mape, mae, rmse and wall_seconds over the non-empty
/// reports (MAPE over those that define it); counts are summed. Throws
/// std::invalid_argument for an empty input.
MetricsReport aggregate(std::span<const MetricsReport> reports);

}  // namespace driftcast::evaluate
