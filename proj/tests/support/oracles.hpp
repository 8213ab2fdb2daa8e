#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the library code it is checking.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "driftcast/ingest.hpp"
#include "driftcast/regressor.hpp"
#include "driftcast/windowing.hpp"

namespace oracle {

/// Every valid 1-based start day i of a sliding window, found by trying all i.
struct BruteExample {
  std::vector<double> features;
  double target;
  int first_day;  // 1-based
};
std::vector<BruteExample> brute_force_examples(std::span<const std::int64_t> days, int window, int horizon,
                                               int avg_len);

struct BestSplit {
  int attribute = -1;
  double threshold = 0.0;
  double score = 0.0;
};

/// Exhaustive variance-reduction search: every midpoint between consecutive
/// distinct values of every attribute, merit 1 - SSE_children / SSE_parent
/// from two-pass sums, both sides holding at least `min_side` rows. Ties
/// within `tolerance` go to the lower attribute, then the lower threshold.
std::optional<BestSplit> exhaustive_variance_split(const std::vector<std::vector<double>>& x,
                                                   const std::vector<double>& y, double min_side,
                                                   double tolerance);

/// Same search scored as CART does: SSE reduction (absolute), ties relative.
std::optional<BestSplit> exhaustive_sse_split(const std::vector<std::vector<double>>& x,
                                              const std::vector<double>& y, int min_leaf, double rel_tolerance);

struct Metrics {
  double mae, rmse;
  std::optional<double> mape;
};
Metrics metrics(const std::vector<double>& y, const std::vector<double>& y_hat);

/// Number of ways (out of C(n1+n2, n1)) the first sample can have U <= u,
/// by listing every subset of ranks.
double enumerate_u_cdf(int n1, int n2, double u);

std::vector<double> bernoulli_stream(std::mt19937_64& rng, std::size_t n, double p);

/// Series with known per-day values, anchored on `start`.
driftcast::CaseSeries make_series(std::string country, driftcast::Date start, std::vector<std::int64_t> values);

driftcast::TrainingSet make_training_set(const std::vector<std::vector<double>>& x, const std::vector<double>& y);

/// Predicts a fixed value and ignores training.
class ConstantModel : public driftcast::OnlineRegressor {
 public:
  explicit ConstantModel(double value) : value_(value) {}
  std::string_view kind() const override { return "constant"; }
  void learn_one(std::span<const double>, double, double = 1.0) override { ++seen_; }
  double predict_one(std::span<const double>) const override { return value_; }
  nlohmann::json state() const override { return {{"value", value_}}; }
  std::size_t seen() const { return seen_; }

 private:
  double value_;
  std::size_t seen_ = 0;
};

/// Predicts the last target it learned (0 before any).
class LastTargetModel : public driftcast::OnlineRegressor {
 public:
  std::string_view kind() const override { return "last_target"; }
  void learn_one(std::span<const double>, double y, double = 1.0) override { last_ = y; }
  double predict_one(std::span<const double>) const override { return last_; }
  nlohmann::json state() const override { return {{"last", last_}}; }

 private:
  double last_ = 0.0;
};

/// Records the first feature of every learned example.
class RecordingModel : public driftcast::OnlineRegressor {
 public:
  std::string_view kind() const override { return "recording"; }
  void learn_one(std::span<const double> x, double, double = 1.0) override { seen.push_back(x[0]); }
  double predict_one(std::span<const double>) const override { return 0.0; }
  nlohmann::json state() const override { return {}; }
  std::vector<double> seen;
};

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& p);

}  // namespace oracle
