#include <gtest/gtest.h>

#include <random>

#include "driftcast/online/hoeffding_tree.hpp"
#include "driftcast/online/split_statistics.hpp"
#include "online_streams.hpp"
#include "oracles.hpp"

using namespace driftcast::online;

TEST(HoeffdingTree, FreshModelPredictsZero) {
  HoeffdingTreeRegressor t;
  const std::vector<double> x{1.0, 2.0, 3.0};
  EXPECT_EQ(t.predict_one(x), 0.0);
  EXPECT_EQ(t.n_leaves(), 1u);
}

TEST(HoeffdingTree, ConstantTargetInMeanMode) {
  HoeffdingTreeRegressor t({.leaf_prediction = LeafPrediction::mean});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> x{u(rng), u(rng)};
    t.learn_one(x, 42.0);
  }
  for (int i = 0; i < 20; ++i) {
    const std::vector<double> x{u(rng), u(rng)};
    EXPECT_NEAR(t.predict_one(x), 42.0, 1e-6);
  }
}

TEST(HoeffdingTree, ConstantTargetNeverSplits) {
  HoeffdingTreeRegressor t({.grace_period = 50});
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const std::vector<double> x{u(rng), u(rng)};
    t.learn_one(x, 7.0);
  }
  EXPECT_EQ(t.n_leaves(), 1u);
  const std::vector<double> x{0.5, 0.5};
  EXPECT_NEAR(t.predict_one(x), 7.0, 1e-6);
}

TEST(HoeffdingTree, DimensionMismatchThrows) {
  HoeffdingTreeRegressor t;
  const std::vector<double> a{1.0, 2.0}, b{1.0};
  t.learn_one(a, 1.0);
  EXPECT_THROW(t.learn_one(b, 1.0), std::invalid_argument);
  EXPECT_THROW(static_cast<void>(t.predict_one(b)), std::invalid_argument);
}

TEST(HoeffdingTree, InvalidParamsThrow) {
  EXPECT_THROW(HoeffdingTreeRegressor({.grace_period = 0}), std::invalid_argument);
}

// A grace period of 20 with tie threshold 1 forces a split at the first check,
// so the root must split exactly where the exhaustive search says.
TEST(HoeffdingTree, FirstSplitMatchesExhaustiveOracle) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    HoeffdingTreeRegressor t({.grace_period = 20, .tie_threshold = 1.0, .min_branch_weight = 5.0});
    std::vector<std::vector<double>> xs;
    std::vector<double> ys;
    for (int i = 0; i < 20; ++i) {
      std::vector<double> x{u(rng), u(rng), u(rng)};
      const double y = (x[trial % 3] > 0.5 ? 4.0 : 0.0) + u(rng);
      xs.push_back(x);
      ys.push_back(y);
      t.learn_one(x, y);
    }
    const auto expected = oracle::exhaustive_variance_split(xs, ys, 5.0, kMeritTieTolerance);
    ASSERT_TRUE(expected);
    const auto root = t.state().at("root");
    ASSERT_TRUE(root.contains("attribute")) << "trial " << trial;
    EXPECT_EQ(root.at("attribute").get<int>(), expected->attribute);
    EXPECT_EQ(root.at("threshold").get<double>(), expected->threshold);
    EXPECT_EQ(t.n_leaves(), 2u);
  }
}

TEST(HoeffdingTree, LearnsStepFunction) {
  HoeffdingTreeRegressor t({.leaf_prediction = LeafPrediction::mean});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const std::vector<double> x{u(rng), u(rng)};
    t.learn_one(x, x[1] > 0.3 ? 10.0 : -10.0);
  }
  EXPECT_GE(t.n_leaves(), 2u);
  const std::vector<double> lo{0.5, 0.1}, hi{0.5, 0.9};
  EXPECT_NEAR(t.predict_one(lo), -10.0, 0.5);
  EXPECT_NEAR(t.predict_one(hi), 10.0, 0.5);
}

TEST(HoeffdingTree, PredictDoesNotMutate) {
  HoeffdingTreeRegressor t;
  for (const auto& e : streams::stationary(4, 1500)) t.learn_one(e.x, e.y);
  const auto before = t.state();
  const std::vector<double> x{0.1, 0.7, 0.3, 0.9};
  for (int i = 0; i < 10; ++i) static_cast<void>(t.predict_one(x));
  EXPECT_EQ(t.state(), before);
}

TEST(HoeffdingTree, StateRoundTripContinuesIdentically) {
  const auto data = streams::stationary(5, 3000);
  HoeffdingTreeRegressor a({.grace_period = 100, .max_features = 2}, 11);
  for (int i = 0; i < 1500; ++i) a.learn_one(data[i].x, data[i].y);
  auto b = HoeffdingTreeRegressor::from_state(a.state());
  for (int i = 1500; i < 3000; ++i) {
    ASSERT_EQ(a.predict_one(data[i].x), b.predict_one(data[i].x));
    a.learn_one(data[i].x, data[i].y);
    b.learn_one(data[i].x, data[i].y);
  }
  EXPECT_EQ(a.state(), b.state());
}

TEST(HoeffdingTree, ModesRoundTripThroughStrings) {
  for (auto m : {LeafPrediction::mean, LeafPrediction::perceptron, LeafPrediction::adaptive})
    EXPECT_EQ(leaf_prediction_from_string(to_string(m)), m);
  EXPECT_THROW(leaf_prediction_from_string("median"), std::invalid_argument);
}
