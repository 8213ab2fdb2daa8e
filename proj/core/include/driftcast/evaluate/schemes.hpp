#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "driftcast/evaluate/metrics.hpp"
#include "driftcast/regressor.hpp"
#include "driftcast/windowing.hpp"

namespace driftcast::evaluate {

using ModelFactory = std::function<std::unique_ptr<Regressor>()>;

struct PredictionRecord {
  std::string country;
  Date target_end_date;
  double target = 0.0;
  double prediction = 0.0;
};

struct SchemeResult {
  MetricsReport metrics;
  std::vector<PredictionRecord> predictions;  // scored examples, in stream order
};

/// Target-end dates in (after, through]; the same interval a hold-out test
/// month covers.
struct ScoreWindow {
  Date after;
  Date through;
  bool contains(Date d) const { return after < d && d <= through; }
};

/// Fits the model on split.train (online learners see it one example at a
/// time, in order) and scores split.test. wall_seconds covers fit and
/// predict. Throws std::invalid_argument for an empty training set; an empty
/// test set gives an `empty` report.
SchemeResult run_holdout(Regressor& model, const Split& split);
SchemeResult run_holdout(const ModelFactory& factory, const Split& split);

/// Learns `pretrain` without scoring, then for each stream example predicts,
/// scores it if its target_end_date falls in `window`, and learns it.
SchemeResult run_prequential(OnlineRegressor& model, std::span<const WindowedExample> pretrain,
                             std::span<const WindowedExample> stream, ScoreWindow window);

}  // namespace driftcast::evaluate
