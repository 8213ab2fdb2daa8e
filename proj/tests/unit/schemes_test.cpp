#include <gtest/gtest.h>

#include "driftcast/batch/linear.hpp"
#include "driftcast/evaluate/schemes.hpp"
#include "driftcast/online/passive_aggressive.hpp"
#include "oracles.hpp"

using namespace driftcast;
using namespace driftcast::evaluate;

namespace {

const Date kDay0 = Date::from_ymd(2020, 6, 1);

WindowedExample ex(int day, double target, double feature) {
  WindowedExample e;
  e.features = {feature, 1.0};
  e.target = target;
  e.country = "X";
  e.target_end_date = kDay0 + day;
  e.target_start_date = e.target_end_date - 9;
  e.last_input_date = e.target_start_date - 30;
  return e;
}

Split make_split(int n_train, int n_test) {
  Split s;
  s.milestone = kDay0 + n_train;
  for (int i = 1; i <= n_train; ++i) s.train.push_back(ex(i, 10.0 * i, i));
  for (int i = n_train + 1; i <= n_train + n_test; ++i) s.test.push_back(ex(i, 10.0 * i, i));
  return s;
}

}  // namespace

TEST(Holdout, ConstantStubMatchesDirectMetrics) {
  const auto split = make_split(20, 8);
  oracle::ConstantModel m(250.0);
  const auto r = run_holdout(m, split);
  std::vector<double> y, p;
  for (const auto& e : split.test) {
    y.push_back(e.target);
    p.push_back(250.0);
  }
  const auto direct = compute_metrics(y, p);
  EXPECT_EQ(*r.metrics.mape, *direct.mape);
  EXPECT_EQ(r.metrics.mae, direct.mae);
  EXPECT_EQ(r.metrics.rmse, direct.rmse);
  EXPECT_EQ(m.seen(), 20u);
  ASSERT_EQ(r.predictions.size(), 8u);
  EXPECT_EQ(r.predictions[0].target_end_date, split.test[0].target_end_date);
  EXPECT_GE(r.metrics.wall_seconds, 0.0);
}

TEST(Holdout, OnlineLearnerSeesTrainInOrderAndNothingElse) {
  const auto split = make_split(15, 5);
  oracle::RecordingModel m;
  run_holdout(m, split);
  ASSERT_EQ(m.seen.size(), 15u);
  for (std::size_t i = 0; i < m.seen.size(); ++i) EXPECT_EQ(m.seen[i], static_cast<double>(i + 1));
}

TEST(Holdout, BatchAndOnlineScoreSameCount) {
  auto split = make_split(30, 10);
  split.test[3].target = 0.0;
  online::PassiveAggressiveRegressor pa;
  batch::LinearRegression ols;
  const auto a = run_holdout(pa, split);
  const auto b = run_holdout(ols, split);
  EXPECT_EQ(a.metrics.n_scored, b.metrics.n_scored);
  EXPECT_EQ(a.metrics.n_scored, 9u);
  EXPECT_EQ(a.metrics.n_skipped_zero_target, 1u);
}

TEST(Holdout, FactoryBuildsFreshModel) {
  const auto split = make_split(10, 3);
  int built = 0;
  const ModelFactory f = [&] {
    ++built;
    return std::make_unique<batch::LinearRegression>();
  };
  const auto r = run_holdout(f, split);
  EXPECT_EQ(built, 1);
  EXPECT_NEAR(r.metrics.mae, 0.0, 1e-6);
}

TEST(Holdout, EmptyTrainThrowsEmptyTestFlags) {
  auto split = make_split(0, 3);
  oracle::ConstantModel m(1.0);
  EXPECT_THROW(run_holdout(m, split), std::invalid_argument);
  split = make_split(4, 0);
  EXPECT_TRUE(run_holdout(m, split).metrics.empty);
}

TEST(Prequential, LastTargetTrace) {
  std::vector<WindowedExample> stream{ex(1, 1, 0), ex(2, 2, 0), ex(3, 3, 0), ex(4, 4, 0)};
  oracle::LastTargetModel m;
  const auto r = run_prequential(m, {}, stream, {kDay0, kDay0 + 4});
  ASSERT_EQ(r.predictions.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r.predictions[i].prediction, static_cast<double>(i));
    EXPECT_EQ(std::abs(r.predictions[i].target - r.predictions[i].prediction), 1.0);
  }
  EXPECT_EQ(r.metrics.mae, 1.0);
}

TEST(Prequential, PretrainIsLearnedButNotScored) {
  std::vector<WindowedExample> pre{ex(1, 5, 1), ex(2, 6, 2)};
  std::vector<WindowedExample> stream{ex(3, 7, 3), ex(4, 8, 4)};
  oracle::RecordingModel m;
  const auto r = run_prequential(m, pre, stream, {kDay0, kDay0 + 10});
  EXPECT_EQ(m.seen, (std::vector<double>{1, 2, 3, 4}));
  EXPECT_EQ(r.predictions.size(), 2u);
}

TEST(Prequential, OutsideWindowLearnsButIsNotScored) {
  std::vector<WindowedExample> stream;
  for (int i = 1; i <= 10; ++i) stream.push_back(ex(i, i, i));
  oracle::RecordingModel m;
  const auto r = run_prequential(m, {}, stream, {kDay0 + 3, kDay0 + 7});
  EXPECT_EQ(m.seen.size(), 10u);
  ASSERT_EQ(r.predictions.size(), 4u);
  EXPECT_EQ(r.predictions.front().target_end_date, kDay0 + 4);
  EXPECT_EQ(r.predictions.back().target_end_date, kDay0 + 7);
}

TEST(Prequential, FrozenModelEqualsHoldoutExactly) {
  const auto split = make_split(25, 12);
  oracle::ConstantModel a(137.5), b(137.5);
  const auto h = run_holdout(a, split);
  const auto p = run_prequential(b, split.train, split.test, {split.milestone, split.milestone + 30});
  EXPECT_EQ(*h.metrics.mape, *p.metrics.mape);
  EXPECT_EQ(h.metrics.mae, p.metrics.mae);
  EXPECT_EQ(h.metrics.rmse, p.metrics.rmse);
  EXPECT_EQ(h.metrics.n_scored, p.metrics.n_scored);
}
