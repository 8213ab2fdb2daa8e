#include "driftcast/evaluate/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace driftcast::evaluate {

MetricsReport compute_metrics(std::span<const double> targets, std::span<const double> predictions) {
  if (targets.size() != predictions.size()) {
    throw std::invalid_argument("targets and predictions differ in length");
  }
  MetricsReport r;
  if (targets.empty()) {
    r.empty = true;
    return r;
  }
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  double pct_sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double err = targets[i] - predictions[i];
    abs_sum += std::abs(err);
    sq_sum += err * err;
    if (targets[i] == 0.0) {
      ++r.n_skipped_zero_target;
    } else {
      ++r.n_scored;
      pct_sum += std::abs(err) / std::abs(targets[i]);
    }
  }
  const auto n = static_cast<double>(targets.size());
  r.mae = abs_sum / n;
  r.rmse = std::sqrt(sq_sum / n);
  if (r.n_scored > 0) r.mape = 100.0 * pct_sum / static_cast<double>(r.n_scored);
  return r;
}

MetricsReport aggregate(std::span<const MetricsReport> reports) {
  if (reports.empty()) throw std::invalid_argument("aggregate needs at least one report");
  MetricsReport out;
  std::size_t n_valid = 0;
  std::size_t n_mape = 0;
  double mape = 0.0;
  for (const auto& r : reports) {
    out.n_scored += r.n_scored;
    out.n_skipped_zero_target += r.n_skipped_zero_target;
    out.n_undefined_mape += r.n_undefined_mape;
    if (r.empty) continue;
    ++n_valid;
    out.mae += r.mae;
    out.rmse += r.rmse;
    out.wall_seconds += r.wall_seconds;
    if (r.mape) {
      mape += *r.mape;
      ++n_mape;
    } else {
      ++out.n_undefined_mape;
    }
  }
  if (n_valid == 0) {
    out.empty = true;
    return out;
  }
  out.mae /= static_cast<double>(n_valid);
  out.rmse /= static_cast<double>(n_valid);
  out.wall_seconds /= static_cast<double>(n_valid);
  if (n_mape > 0) out.mape = mape / static_cast<double>(n_mape);
  return out;
}

}  // namespace driftcast::evaluate
