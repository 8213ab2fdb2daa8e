#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "driftcast/online/passive_aggressive.hpp"

using namespace driftcast::online;

namespace {
double eps_loss(const PassiveAggressiveRegressor& m, std::span<const double> x, double y, double eps) {
  return std::max(0.0, std::abs(m.predict_one(x) - y) - eps);
}
}  // namespace

TEST(PassiveAggressive, UnconstrainedHandExample) {
  PassiveAggressiveRegressor m({.variant = PaVariant::pa, .epsilon = 0.1, .fit_intercept = false});
  const std::vector<double> x{1.0, 0.0};
  EXPECT_NEAR(m.step_size(x, 2.0), 1.9, 1e-15);
  m.learn_one(x, 2.0);
  ASSERT_EQ(m.weights().size(), 2u);
  EXPECT_NEAR(m.weights()[0], 1.9, 1e-15);
  EXPECT_EQ(m.weights()[1], 0.0);
  EXPECT_NEAR(eps_loss(m, x, 2.0, 0.1), 0.0, 1e-15);
}

TEST(PassiveAggressive, CappedStepHandExample) {
  PassiveAggressiveRegressor m({.variant = PaVariant::pa1, .c = 0.5, .epsilon = 0.1, .fit_intercept = false});
  const std::vector<double> x{1.0, 0.0};
  EXPECT_EQ(m.step_size(x, 2.0), 0.5);
  m.learn_one(x, 2.0);
  EXPECT_EQ(m.weights()[0], 0.5);
  EXPECT_EQ(m.weights()[1], 0.0);
}

TEST(PassiveAggressive, SquaredVariantStep) {
  PassiveAggressiveRegressor m({.variant = PaVariant::pa2, .c = 0.5, .epsilon = 0.1, .fit_intercept = false});
  const std::vector<double> x{1.0, 0.0};
  EXPECT_NEAR(m.step_size(x, 2.0), 1.9 / (1.0 + 1.0), 1e-15);
}

TEST(PassiveAggressive, InterceptMovesWithTheSameStep) {
  PassiveAggressiveRegressor m({.variant = PaVariant::pa, .epsilon = 0.1});
  const std::vector<double> x{1.0, 0.0};
  m.learn_one(x, 2.0);
  EXPECT_NEAR(m.weights()[0], 1.9, 1e-15);
  EXPECT_NEAR(m.bias(), 1.9, 1e-15);
}

TEST(PassiveAggressive, ZeroLossAfterUpdateOnRandomInstances) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    PassiveAggressiveRegressor m({.variant = PaVariant::pa, .epsilon = 0.1, .fit_intercept = false});
    // warm the weights with a few updates so w is not zero
    for (int k = 0; k < 3; ++k) {
      const std::vector<double> w{g(rng), g(rng), g(rng), g(rng)};
      m.learn_one(w, g(rng));
    }
    std::vector<double> x{g(rng), g(rng), g(rng), g(rng)};
    const double y = g(rng) * 10.0;
    m.learn_one(x, y);
    EXPECT_LE(eps_loss(m, x, y, 0.1), 1e-9) << "instance " << i;
  }
}

TEST(PassiveAggressive, CappedStepNeverExceedsC) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g(0.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    PassiveAggressiveRegressor m({.variant = PaVariant::pa1, .c = 0.25, .epsilon = 0.1});
    const std::vector<double> x{g(rng), g(rng)};
    const double y = g(rng) * 20.0;
    const double tau = m.step_size(x, y);
    const double uncapped = std::max(0.0, std::abs(y) - 0.1) / (x[0] * x[0] + x[1] * x[1]);
    EXPECT_EQ(tau, std::min(0.25, uncapped));
  }
}

TEST(PassiveAggressive, PassiveInsideTube) {
  PassiveAggressiveRegressor m({.variant = PaVariant::pa, .epsilon = 0.5});
  const std::vector<double> x{1.0, 2.0};
  m.learn_one(x, 3.0);
  const auto w = m.weights();
  const double b = m.bias();
  const double y_hat = m.predict_one(x);
  m.learn_one(x, y_hat + 0.4);
  EXPECT_EQ(m.weights(), w);
  EXPECT_EQ(m.bias(), b);
  EXPECT_EQ(m.step_size(x, y_hat - 0.5), 0.0);
}

TEST(PassiveAggressive, ZeroNormUpdateIsSkippedAndCounted) {
  PassiveAggressiveRegressor m({.variant = PaVariant::pa, .epsilon = 0.1});
  const std::vector<double> x{0.0, 0.0};
  m.learn_one(x, 5.0);
  EXPECT_EQ(m.n_skipped_zero_norm(), 1u);
  EXPECT_EQ(m.bias(), 0.0);
  EXPECT_EQ(m.predict_one(x), 0.0);
}

TEST(PassiveAggressive, FreshPredictsZeroAndRoundTrips) {
  PassiveAggressiveRegressor m;
  const std::vector<double> x{3.0, 4.0};
  EXPECT_EQ(m.predict_one(x), 0.0);
  m.learn_one(x, 10.0);
  auto r = PassiveAggressiveRegressor::from_state(m.state());
  EXPECT_EQ(r.predict_one(x), m.predict_one(x));
  EXPECT_EQ(pa_variant_from_string(to_string(PaVariant::pa2)), PaVariant::pa2);
}
