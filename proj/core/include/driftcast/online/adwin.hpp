#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include <nlohmann/json.hpp>

namespace driftcast::online {

struct AdwinParams {
  double delta = 0.002;
  int max_buckets = 5;        // buckets kept per size class before merging
  int clock = 32;             // cut checks happen every `clock` insertions
  int min_window_length = 5;  // smallest sub-window considered for a cut
  int grace_period = 10;      // no checks until the window is this wide
};

struct AdwinUpdate {
  bool drift = false;
  std::int64_t width_after = 0;
};

/// Adaptive windowing change detector over a stream of reals.
///
/// The window is held as an exponential histogram: size class i stores up to
/// max_buckets buckets of 2^i items, each with its sum and sum of squared
/// deviations. Whenever two adjacent sub-windows have means further apart than
/// the cut threshold at confidence delta, the oldest bucket is dropped.
class Adwin {
 public:
  explicit Adwin(AdwinParams params = {});

  /// Throws std::invalid_argument for non-finite values.
  AdwinUpdate update(double value);

  std::int64_t width() const { return width_; }
  double estimation() const { return width_ > 0 ? total_ / static_cast<double>(width_) : 0.0; }
  /// Population variance of the retained items.
  double variance() const { return width_ > 0 ? variance_ / static_cast<double>(width_) : 0.0; }
  std::int64_t n_detections() const { return n_detections_; }
  const AdwinParams& params() const { return params_; }

  nlohmann::json state() const;
  static Adwin from_state(const nlohmann::json& j);

 private:
  struct Bucket {
    double total = 0.0;
    double variance = 0.0;  // sum of squared deviations from the bucket mean
  };

  void insert(double value);
  void compress();
  bool detect_cuts();
  void drop_oldest();
  bool cut_expression(double n0, double n1, double mean_diff) const;

  AdwinParams params_;
  std::vector<std::deque<Bucket>> rows_;  // rows_[i]: buckets of 2^i items, front = newest
  std::int64_t width_ = 0;
  double total_ = 0.0;
  double variance_ = 0.0;
  std::int64_t tick_ = 0;
  std::int64_t n_detections_ = 0;
};

}  // namespace driftcast::online
