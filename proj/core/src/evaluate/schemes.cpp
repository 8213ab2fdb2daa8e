#include "driftcast/evaluate/schemes.hpp"

#include <chrono>
#include <stdexcept>

namespace driftcast::evaluate {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SchemeResult finish(std::vector<PredictionRecord> predictions, double seconds) {
  std::vector<double> y, y_hat;
  y.reserve(predictions.size());
  y_hat.reserve(predictions.size());
  for (const auto& p : predictions) {
    y.push_back(p.target);
    y_hat.push_back(p.prediction);
  }
  SchemeResult out{compute_metrics(y, y_hat), std::move(predictions)};
  out.metrics.wall_seconds = seconds;
  return out;
}

}  // namespace

SchemeResult run_holdout(Regressor& model, const Split& split) {
  if (split.train.empty()) throw std::invalid_argument("hold-out needs a non-empty training set");
  const auto start = Clock::now();
  model.fit(to_training_set(split.train));
  std::vector<PredictionRecord> predictions;
  predictions.reserve(split.test.size());
  for (const auto& ex : split.test) {
    predictions.push_back({ex.country, ex.target_end_date, ex.target, model.predict_one(ex.features)});
  }
  return finish(std::move(predictions), seconds_since(start));
}

SchemeResult run_holdout(const ModelFactory& factory, const Split& split) {
  auto model = factory();
  return run_holdout(*model, split);
}

SchemeResult run_prequential(OnlineRegressor& model, std::span<const WindowedExample> pretrain,
                             std::span<const WindowedExample> stream, ScoreWindow window) {
  const auto start = Clock::now();
  for (const auto& ex : pretrain) model.learn_one(ex.features, ex.target);
  std::vector<PredictionRecord> predictions;
  for (const auto& ex : stream) {
    const double y_hat = model.predict_one(ex.features);
    if (window.contains(ex.target_end_date)) {
      predictions.push_back({ex.country, ex.target_end_date, ex.target, y_hat});
    }
    model.learn_one(ex.features, ex.target);
  }
  return finish(std::move(predictions), seconds_since(start));
}

}  // namespace driftcast::evaluate
