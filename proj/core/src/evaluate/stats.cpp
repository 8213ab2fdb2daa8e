#include "driftcast/evaluate/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace driftcast::evaluate {

namespace {

void decide(StatTestResult& r) {
  r.p_value = std::clamp(r.p_value, 0.0, 1.0);
  r.decisions.clear();
  for (double alpha : kSignificanceLevels) r.decisions.emplace_back(alpha, r.p_value < alpha);
}

void require_size(std::span<const double> s, std::size_t n, const char* what) {
  if (s.size() < n) {
    throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(n) + " values");
  }
  for (double v : s) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
  }
}

double mean_of(std::span<const double> s) {
  return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
}

bool all_equal(std::span<const double> s, double v) {
  return std::all_of(s.begin(), s.end(), [v](double x) { return x == v; });
}

double normal_sf(double z) {
  return boost::math::cdf(boost::math::complement(boost::math::normal_distribution<double>(), z));
}

double skew_z(double b2, double n) {
  double y = b2 * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
  const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                       ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
  const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
  const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
  const double alpha = std::sqrt(2.0 / (w2 - 1.0));
  if (y == 0.0) y = 1.0;
  return delta * std::log(y / alpha + std::sqrt((y / alpha) * (y / alpha) + 1.0));
}

double kurtosis_z(double b2, double n) {
  const double e = 3.0 * (n - 1.0) / (n + 1.0);
  const double var_b2 = 24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
  const double x = (b2 - e) / std::sqrt(var_b2);
  const double sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                            std::sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0)));
  const double a = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + std::sqrt(1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
  const double term1 = 1.0 - 2.0 / (9.0 * a);
  const double denom = 1.0 + x * std::sqrt(2.0 / (a - 4.0));
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double term2 = std::copysign(std::cbrt((1.0 - 2.0 / a) / std::abs(denom)), denom);
  return (term1 - term2) / std::sqrt(2.0 / (9.0 * a));
}

// counts[u] = number of orderings of n1 + n2 distinct values whose first
// sample has U = u. Built by the usual recursion on the largest value.
std::vector<double> exact_u_counts(std::size_t n1, std::size_t n2) {
  std::vector<std::vector<std::vector<double>>> f(n1 + 1, std::vector<std::vector<double>>(n2 + 1));
  for (std::size_t i = 0; i <= n1; ++i) {
    for (std::size_t j = 0; j <= n2; ++j) {
      auto& cell = f[i][j];
      cell.assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        cell[0] = 1.0;
        continue;
      }
      // Largest value belongs to sample 1: it beats all j values of sample 2.
      for (std::size_t u = 0; u < f[i - 1][j].size(); ++u) cell[u + j] += f[i - 1][j][u];
      for (std::size_t u = 0; u < f[i][j - 1].size(); ++u) cell[u] += f[i][j - 1][u];
    }
  }
  return f[n1][n2];
}

}  // namespace

std::string_view to_string(TestName t) {
  switch (t) {
    case TestName::normality: return "normality";
    case TestName::welch_t: return "welch_t";
    case TestName::mann_whitney_u: return "mann_whitney_u";
  }
  return "unknown";
}

StatTestResult normality_test(std::span<const double> sample) {
  require_size(sample, 8, "normality test");
  StatTestResult r;
  r.test = TestName::normality;
  r.method = "dagostino_pearson";
  const double n = static_cast<double>(sample.size());
  const double m = mean_of(sample);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : sample) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 == 0.0 || all_equal(sample, sample[0])) {
    r.degenerate = true;
    r.statistic = std::numeric_limits<double>::quiet_NaN();
    r.p_value = 1.0;
    decide(r);
    return r;
  }
  const double zs = skew_z(m3 / std::pow(m2, 1.5), n);
  const double zk = kurtosis_z(m4 / (m2 * m2), n);
  r.statistic = zs * zs + zk * zk;
  r.p_value = std::exp(-0.5 * r.statistic);  // chi-squared(2) survival
  decide(r);
  return r;
}

StatTestResult welch_t(std::span<const double> a, std::span<const double> b) {
  require_size(a, 3, "welch t");
  require_size(b, 3, "welch t");
  StatTestResult r;
  r.test = TestName::welch_t;
  r.method = "welch";
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  double va = 0.0, vb = 0.0;
  for (double v : a) va += (v - ma) * (v - ma);
  for (double v : b) vb += (v - mb) * (v - mb);
  va /= na - 1.0;
  vb /= nb - 1.0;
  const double sa = va / na;
  const double sb = vb / nb;
  const double se = std::sqrt(sa + sb);
  if (se == 0.0) {
    r.degenerate = ma == mb;
    r.statistic = ma == mb ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), ma - mb);
    r.p_value = ma == mb ? 1.0 : 0.0;
    decide(r);
    return r;
  }
  r.statistic = (ma - mb) / se;
  const double df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  const boost::math::students_t_distribution<double> dist(df);
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.statistic)));
  decide(r);
  return r;
}

StatTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, MannWhitneyMethod method) {
  require_size(a, 3, "mann-whitney");
  require_size(b, 3, "mann-whitney");
  StatTestResult r;
  r.test = TestName::mann_whitney_u;
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;

  // Midranks over the pooled sample.
  std::vector<std::pair<double, std::size_t>> pooled;
  pooled.reserve(n);
  for (std::size_t i = 0; i < n1; ++i) pooled.emplace_back(a[i], i);
  for (std::size_t i = 0; i < n2; ++i) pooled.emplace_back(b[i], n1 + i);
  std::sort(pooled.begin(), pooled.end());
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  bool ties = false;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double t = static_cast<double>(j - i);
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second < n1) rank_sum_a += midrank;
    }
    if (t > 1.0) {
      ties = true;
      tie_term += t * t * t - t;
    }
    i = j;
  }
  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  const double u1 = rank_sum_a - dn1 * (dn1 + 1.0) / 2.0;
  const double u2 = dn1 * dn2 - u1;
  r.statistic = u1;

  if (pooled.front().first == pooled.back().first) {
    r.degenerate = true;
    r.method = "degenerate";
    r.p_value = 1.0;
    decide(r);
    return r;
  }

  bool exact = false;
  switch (method) {
    case MannWhitneyMethod::automatic: exact = n1 <= 20 && n2 <= 20 && !ties; break;
    case MannWhitneyMethod::exact:
      if (ties) throw std::invalid_argument("exact Mann-Whitney requires tie-free samples");
      exact = true;
      break;
    case MannWhitneyMethod::asymptotic: exact = false; break;
  }

  const double u_big = std::max(u1, u2);
  if (exact) {
    r.method = "exact";
    const auto counts = exact_u_counts(n1, n2);
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    double upper = 0.0;  // P(U >= u_big)
    for (std::size_t u = static_cast<std::size_t>(u_big); u < counts.size(); ++u) upper += counts[u];
    r.p_value = 2.0 * upper / total;
  } else {
    r.method = "asymptotic";
    const double mu = dn1 * dn2 / 2.0;
    const double dn = static_cast<double>(n);
    const double sigma = std::sqrt(dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0))));
    const double z = (u_big - mu - 0.5) / sigma;
    r.p_value = 2.0 * normal_sf(z);
  }
  decide(r);
  return r;
}

}  // namespace driftcast::evaluate
