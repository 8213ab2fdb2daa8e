#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace driftcast::evaluate {

enum class TestName { normality, welch_t, mann_whitney_u };
std::string_view to_string(TestName t);

inline constexpr std::array<double, 3> kSignificanceLevels{0.01, 0.05, 0.1};

struct StatTestResult {
  TestName test = TestName::normality;
  double statistic = 0.0;
  double p_value = 1.0;
  /// (alpha, p < alpha) for each of kSignificanceLevels.
  std::vector<std::pair<double, bool>> decisions;
  /// Both samples consist of one repeated value; p is reported as 1.
  bool degenerate = false;
  std::string method;  // e.g. "exact" or "asymptotic" for Mann-Whitney

  bool rejects(double alpha) const { return p_value < alpha; }
};

/// D'Agostino-Pearson omnibus K^2 = Zs^2 + Zk^2 from the skewness and
/// kurtosis z-scores; p from chi-squared with two degrees of freedom.
/// Needs n >= 8.
StatTestResult normality_test(std::span<const double> sample);

/// Two-sided unequal-variance t test with Welch-Satterthwaite degrees of
/// freedom. Each sample needs n >= 3.
StatTestResult welch_t(std::span<const double> a, std::span<const double> b);

enum class MannWhitneyMethod { automatic, exact, asymptotic };

/// Two-sided rank-sum test; the statistic is U of the first sample.
/// `automatic` enumerates the exact null distribution when both samples have
/// at most 20 values and there are no ties, else uses the normal approximation
/// with tie and continuity corrections. `exact` with ties throws
/// std::invalid_argument. Each sample needs n >= 3.
StatTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                              MannWhitneyMethod method = MannWhitneyMethod::automatic);

}  // namespace driftcast::evaluate
