#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "driftcast/evaluate/stats.hpp"
#include "oracles.hpp"

using namespace driftcast::evaluate;

namespace {

// Reference values computed once with scipy.stats 1.15.3.
const std::vector<double> kA{7.15235,   12.527457, 8.258677,  9.481654,  9.849313,  8.518231,
                             7.264415,  11.297786, 10.722116, 6.094274,  14.694819, 11.936994,
                             8.481226,  11.804397, 9.066094,  9.878621,  11.577689, 7.486664,
                             11.151715, 12.797958, 12.644596, 9.400603,  11.805839, 6.756835,
                             9.683621,  10.898968, 7.312798,  9.836625,  13.44948,  15.236319};
const std::vector<double> kB{8.655428, 2.129607, 1.282344, 8.514253, 1.591364, 6.312413, 11.70777,
                             4.74815,  5.545259, 5.240568, 6.874612, 7.347658, 7.797565, 6.254358,
                             6.106124, 4.729018, 3.559237, 0.957736, 8.167499, 7.965965, 2.244767,
                             5.027726, 1.90389,  14.279757, 2.459185};
const std::vector<double> kC{-0.223639, -0.701691, -1.795713, 0.818326, -0.571033, 0.000786,
                             -1.063643, 1.301715,  0.747873,  0.980876, -0.110419, 0.467919};
const std::vector<double> kD{1.690607, 1.823009,  1.112383, 0.738095,  0.44052,  0.051356, -0.165479, 1.160035,
                             0.555447, -1.195857, 0.644752, 1.863831, 0.524828, -1.053336, 0.675658};

}  // namespace

TEST(Normality, MatchesReference) {
  auto a = normality_test(kA);
  EXPECT_NEAR(a.statistic, 0.7143249683570284, 1e-9);
  EXPECT_NEAR(a.p_value, 0.6996588050120542, 1e-9);
  auto b = normality_test(kB);
  EXPECT_NEAR(b.statistic, 2.7407230987603066, 1e-9);
  EXPECT_NEAR(b.p_value, 0.25401510394525095, 1e-9);
  EXPECT_EQ(b.decisions.size(), 3u);
  EXPECT_FALSE(b.rejects(0.1));
}

TEST(Normality, RejectsUniformSamples) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> s(5000);
    for (auto& v : s) v = u(rng);
    EXPECT_TRUE(normality_test(s).rejects(0.01)) << seed;
  }
}

TEST(Normality, TooSmallAndDegenerate) {
  EXPECT_THROW(normality_test(std::vector<double>{1, 2, 3, 4, 5, 6, 7}), std::invalid_argument);
  const auto d = normality_test(std::vector<double>(10, 3.0));
  EXPECT_TRUE(d.degenerate);
  EXPECT_EQ(d.p_value, 1.0);
}

TEST(Welch, MatchesReference) {
  const auto r = welch_t(kA, kB);
  EXPECT_NEAR(r.statistic, 5.798270056452546, 1e-9);
  EXPECT_NEAR(r.p_value, 7.495975891122917e-07, 1e-14);
  EXPECT_TRUE(r.rejects(0.01));
  for (auto [alpha, reject] : r.decisions) EXPECT_TRUE(reject) << alpha;
}

TEST(Welch, IdenticalSamples) {
  const auto r = welch_t(kA, kA);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  const std::vector<double> c(5, 2.0);
  const auto d = welch_t(c, c);
  EXPECT_TRUE(d.degenerate);
  EXPECT_EQ(d.p_value, 1.0);
  EXPECT_THROW(welch_t(std::vector<double>{1, 2}, kA), std::invalid_argument);
}

TEST(MannWhitney, ExactSmallCase) {
  const auto r = mann_whitney_u(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5, 6});
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_NEAR(r.p_value, 0.1, 1e-12);
  EXPECT_EQ(r.method, "exact");
  // Enumeration: 1 of the 20 rank splits gives U <= 0, doubled.
  EXPECT_NEAR(r.p_value, 2.0 * oracle::enumerate_u_cdf(3, 3, 0.0) / 20.0, 1e-12);
}

TEST(MannWhitney, ExactMatchesReferenceAndEnumeration) {
  const auto r = mann_whitney_u(kC, kD);
  EXPECT_EQ(r.statistic, 60.0);
  EXPECT_NEAR(r.p_value, 0.15229310406319427, 1e-12);
  const double total = std::exp(std::lgamma(28.0) - std::lgamma(13.0) - std::lgamma(16.0));
  EXPECT_NEAR(r.p_value, 2.0 * oracle::enumerate_u_cdf(12, 15, 60.0) / total, 1e-12);
}

TEST(MannWhitney, AsymptoticMatchesReference) {
  const auto r = mann_whitney_u(kA, kB);
  EXPECT_EQ(r.method, "asymptotic");
  EXPECT_EQ(r.statistic, 656.0);
  EXPECT_NEAR(r.p_value, 2.1233510795771534e-06, 1e-12);
}

TEST(MannWhitney, TiesUseCorrectedApproximation) {
  const std::vector<double> t1{1, 2, 2, 3, 3, 3, 4, 5, 6, 7}, t2{3, 4, 4, 5, 6, 6, 7, 8, 9, 9, 10};
  const auto r = mann_whitney_u(t1, t2);
  EXPECT_EQ(r.method, "asymptotic");
  EXPECT_EQ(r.statistic, 18.5);
  EXPECT_NEAR(r.p_value, 0.010669300560314204, 1e-12);
  EXPECT_THROW(mann_whitney_u(t1, t2, MannWhitneyMethod::exact), std::invalid_argument);
}

TEST(MannWhitney, ExactAndAsymptoticAgreeAtTwenty) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(20), b(20);
    for (auto& v : a) v = g(rng);
    for (auto& v : b) v = g(rng) + 0.5;
    const auto e = mann_whitney_u(a, b, MannWhitneyMethod::exact);
    const auto n = mann_whitney_u(a, b, MannWhitneyMethod::asymptotic);
    EXPECT_EQ(e.statistic, n.statistic);
    EXPECT_NEAR(e.p_value, n.p_value, 0.02) << trial;
  }
}

TEST(MannWhitney, DegenerateAndSymmetric) {
  const std::vector<double> c(6, 1.0);
  const auto d = mann_whitney_u(c, c);
  EXPECT_TRUE(d.degenerate);
  EXPECT_EQ(d.p_value, 1.0);
  const auto ab = mann_whitney_u(kC, kD);
  const auto ba = mann_whitney_u(kD, kC);
  EXPECT_EQ(ab.statistic + ba.statistic, 12.0 * 15.0);
  EXPECT_NEAR(ab.p_value, ba.p_value, 1e-12);
}

TEST(Stats, PValuesInUnitInterval) {
  std::mt19937_64 rng(6);
  std::exponential_distribution<double> e(1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(12), b(25);
    for (auto& v : a) v = e(rng);
    for (auto& v : b) v = e(rng) * 2;
    for (const auto& r : {welch_t(a, b), mann_whitney_u(a, b), normality_test(b)}) {
      ASSERT_GE(r.p_value, 0.0);
      ASSERT_LE(r.p_value, 1.0);
    }
  }
}
