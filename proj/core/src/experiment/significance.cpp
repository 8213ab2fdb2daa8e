#include "driftcast/experiment/significance.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "driftcast/experiment/runner.hpp"

namespace driftcast::experiment {

namespace {

constexpr double kNormalityAlpha = 0.05;
constexpr std::size_t kMinNormality = 8;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> country_mape_vector(const std::vector<ResultRow>& rows, const std::string& algorithm,
                                        const std::string& mode, const std::string& scheme) {
  std::vector<double> out;
  for (const auto& r : headline_rows(rows)) {
    if (r.algorithm == algorithm && r.mode == mode && r.scheme == scheme && r.milestone == kMean &&
        r.country != kAll && r.mape) {
      out.push_back(*r.mape);
    }
  }
  return out;
}

SignificanceResult compare_samples(const std::vector<double>& a, const std::vector<double>& b) {
  SignificanceResult r;
  r.n_a = a.size();
  r.n_b = b.size();
  if (a.size() < kMinNormality || b.size() < kMinNormality) {
    r.skipped_reason = "need at least " + std::to_string(kMinNormality) + " values per sample";
    return r;
  }
  r.normality_a = evaluate::normality_test(a);
  r.normality_b = evaluate::normality_test(b);
  const auto normal = [](const evaluate::StatTestResult& t) {
    return !t.degenerate && !t.rejects(kNormalityAlpha);
  };
  if (normal(*r.normality_a) && normal(*r.normality_b)) {
    r.test = evaluate::welch_t(a, b);
  } else {
    r.test = evaluate::mann_whitney_u(a, b);
  }
  return r;
}

std::vector<SignificanceResult> run_significance(const std::vector<ResultRow>& rows,
                                                 const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> groups;  // (mode, scheme) -> algorithms
  for (const auto& r : rows) {
    auto& algs = groups[{r.mode, r.scheme}];
    if (std::find(algs.begin(), algs.end(), r.algorithm) == algs.end()) algs.push_back(r.algorithm);
  }
  std::vector<SignificanceResult> out;
  for (const auto& [key, algs] : groups) {
    const auto& [mode, scheme] = key;
    std::vector<std::pair<std::string, std::string>> todo;
    if (pairs.empty()) {
      for (std::size_t i = 0; i < algs.size(); ++i) {
        for (std::size_t j = i + 1; j < algs.size(); ++j) todo.emplace_back(algs[i], algs[j]);
      }
    } else {
      todo = pairs;
    }
    for (const auto& [a, b] : todo) {
      SignificanceResult r = compare_samples(country_mape_vector(rows, a, mode, scheme),
                                             country_mape_vector(rows, b, mode, scheme));
      r.algorithm_a = a;
      r.algorithm_b = b;
      r.mode = mode;
      r.scheme = scheme;
      if (!r.test && (r.n_a == 0 || r.n_b == 0)) {
        r.skipped_reason = "no per-country MAPE for " + (r.n_a == 0 ? a : b);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

void write_significance_csv(std::ostream& out, const std::vector<SignificanceResult>& results) {
  out << "algorithm_a,algorithm_b,mode,scheme,n_a,n_b,normality_p_a,normality_p_b,test,method,statistic,p_value,"
         "reject_0.01,reject_0.05,reject_0.1,note\n";
  for (const auto& r : results) {
    out << r.algorithm_a << ',' << r.algorithm_b << ',' << r.mode << ',' << r.scheme << ',' << r.n_a << ',' << r.n_b
        << ',' << (r.normality_a ? num(r.normality_a->p_value) : "NA") << ','
        << (r.normality_b ? num(r.normality_b->p_value) : "NA") << ',';
    if (r.test) {
      out << evaluate::to_string(r.test->test) << ',' << r.test->method << ',' << num(r.test->statistic) << ','
          << num(r.test->p_value);
      for (const auto& [alpha, reject] : r.test->decisions) out << ',' << (reject ? "yes" : "no");
      out << ',' << (r.test->degenerate ? "degenerate" : "") << '\n';
    } else {
      out << "NA,NA,NA,NA,NA,NA,NA,\"" << r.skipped_reason << "\"\n";
    }
  }
}

}  // namespace driftcast::experiment
