#include "driftcast/online/adwin.hpp"

#include <cmath>
#include <stdexcept>

namespace driftcast::online {

Adwin::Adwin(AdwinParams params) : params_(params) {
  if (!(params_.delta > 0.0 && params_.delta < 1.0)) {
    throw std::invalid_argument("ADWIN delta must lie in (0, 1)");
  }
  if (params_.max_buckets < 2 || params_.clock < 1 || params_.min_window_length < 1) {
    throw std::invalid_argument("invalid ADWIN parameters");
  }
}

AdwinUpdate Adwin::update(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("ADWIN input must be finite");
  insert(value);
  compress();
  const bool drift = detect_cuts();
  if (drift) ++n_detections_;
  return {drift, width_};
}

void Adwin::insert(double value) {
  if (rows_.empty()) rows_.emplace_back();
  rows_[0].push_front({value, 0.0});
  ++width_;
  if (width_ > 1) {
    const double prev_mean = total_ / static_cast<double>(width_ - 1);
    const double d = value - prev_mean;
    variance_ += static_cast<double>(width_ - 1) * d * d / static_cast<double>(width_);
  }
  total_ += value;
}

void Adwin::compress() {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() <= static_cast<std::size_t>(params_.max_buckets)) break;
    if (i + 1 == rows_.size()) rows_.emplace_back();
    const double n = std::ldexp(1.0, static_cast<int>(i));
    Bucket older = rows_[i].back();
    rows_[i].pop_back();
    Bucket newer = rows_[i].back();
    rows_[i].pop_back();
    const double diff = older.total / n - newer.total / n;
    rows_[i + 1].push_front({older.total + newer.total,
                             older.variance + newer.variance + n * n * diff * diff / (2.0 * n)});
  }
}

bool Adwin::cut_expression(double n0, double n1, double mean_diff) const {
  const double n = static_cast<double>(width_);
  const double delta_prime = std::log(2.0 * std::log(n) / params_.delta);
  const double m = static_cast<double>(params_.min_window_length);
  const double m_recip = 1.0 / (n0 - m + 1.0) + 1.0 / (n1 - m + 1.0);
  const double epsilon = std::sqrt(2.0 * m_recip * variance() * delta_prime) +
                         2.0 / 3.0 * delta_prime * m_recip;
  return std::fabs(mean_diff) > epsilon;
}

bool Adwin::detect_cuts() {
  ++tick_;
  if (tick_ % params_.clock != 0 || width_ <= params_.grace_period) return false;

  bool changed = false;
  bool reduce = true;
  while (reduce && width_ > 0) {
    reduce = false;
    double n0 = 0.0;
    double n1 = static_cast<double>(width_);
    double sum0 = 0.0;
    double sum1 = total_;
    // Walk from the oldest bucket towards the newest; W0 is the old part.
    for (std::size_t r = rows_.size(); r-- > 0 && !reduce;) {
      const double size = std::ldexp(1.0, static_cast<int>(r));
      const auto& row = rows_[r];
      for (std::size_t k = row.size(); k-- > 0;) {
        if (r == 0 && k == 0) break;  // keep at least the newest bucket in W1
        n0 += size;
        n1 -= size;
        sum0 += row[k].total;
        sum1 -= row[k].total;
        if (n0 >= params_.min_window_length && n1 >= params_.min_window_length &&
            cut_expression(n0, n1, sum0 / n0 - sum1 / n1)) {
          drop_oldest();
          changed = true;
          reduce = true;
          break;
        }
      }
    }
  }
  return changed;
}

void Adwin::drop_oldest() {
  auto& row = rows_.back();
  const double n1 = std::ldexp(1.0, static_cast<int>(rows_.size() - 1));
  const Bucket oldest = row.back();
  row.pop_back();
  width_ -= static_cast<std::int64_t>(n1);
  total_ -= oldest.total;
  if (width_ > 0) {
    const double w = static_cast<double>(width_);
    const double d = oldest.total / n1 - total_ / w;
    variance_ -= oldest.variance + n1 * w * d * d / (n1 + w);
    if (variance_ < 0.0) variance_ = 0.0;
  } else {
    total_ = 0.0;
    variance_ = 0.0;
  }
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

nlohmann::json Adwin::state() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& b : row) r.push_back({b.total, b.variance});
    rows.push_back(std::move(r));
  }
  return {{"delta", params_.delta},
          {"max_buckets", params_.max_buckets},
          {"clock", params_.clock},
          {"min_window_length", params_.min_window_length},
          {"grace_period", params_.grace_period},
          {"rows", std::move(rows)},
          {"width", width_},
          {"total", total_},
          {"variance", variance_},
          {"tick", tick_},
          {"n_detections", n_detections_}};
}

Adwin Adwin::from_state(const nlohmann::json& j) {
  AdwinParams p;
  p.delta = j.at("delta").get<double>();
  p.max_buckets = j.at("max_buckets").get<int>();
  p.clock = j.at("clock").get<int>();
  p.min_window_length = j.at("min_window_length").get<int>();
  p.grace_period = j.at("grace_period").get<int>();
  Adwin a(p);
  for (const auto& r : j.at("rows")) {
    std::deque<Bucket> row;
    for (const auto& b : r) row.push_back({b.at(0).get<double>(), b.at(1).get<double>()});
    a.rows_.push_back(std::move(row));
  }
  a.width_ = j.at("width").get<std::int64_t>();
  a.total_ = j.at("total").get<double>();
  a.variance_ = j.at("variance").get<double>();
  a.tick_ = j.at("tick").get<std::int64_t>();
  a.n_detections_ = j.at("n_detections").get<std::int64_t>();
  return a;
}

}  // namespace driftcast::online
