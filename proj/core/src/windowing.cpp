#include "driftcast/windowing.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "driftcast/errors.hpp"

namespace driftcast {
namespace {

void validate(const WindowParams& p) {
  if (p.window < 1 || p.horizon < 1 || p.avg_len < 1) {
    throw std::invalid_argument("window, horizon and avg_len must all be >= 1");
  }
}

// Offset (0-based) of the last target day relative to the first input day.
std::size_t reach(const WindowParams& p) {
  return static_cast<std::size_t>(p.window - 1 + p.horizon + p.avg_len - 1);
}

}  // namespace

std::size_t example_count(std::size_t length, const WindowParams& params) {
  validate(params);
  const std::size_t span = reach(params) + 1;
  return length >= span ? length - span + 1 : 0;
}

std::vector<WindowedExample> make_examples(const CaseSeries& series, const WindowParams& params) {
  const std::size_t count = example_count(series.values.size(), params);
  const auto window = static_cast<std::size_t>(params.window);
  const auto avg_len = static_cast<std::size_t>(params.avg_len);
  std::vector<WindowedExample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    WindowedExample ex;
    ex.country = series.country;
    ex.features.reserve(window);
    for (std::size_t k = 0; k < window; ++k) {
      ex.features.push_back(static_cast<double>(series.values[i + k]));
    }
    const std::size_t last_input = i + window - 1;
    const std::size_t target_start = last_input + static_cast<std::size_t>(params.horizon);
    double sum = 0.0;
    for (std::size_t k = 0; k < avg_len; ++k) sum += static_cast<double>(series.values[target_start + k]);
    ex.target = sum / static_cast<double>(avg_len);
    ex.last_input_date = series.date_at(last_input);
    ex.target_start_date = series.date_at(target_start);
    ex.target_end_date = series.date_at(target_start + avg_len - 1);
    out.push_back(std::move(ex));
  }
  return out;
}

MilestoneSchedule make_schedule(std::span<const CaseSeries> series, Date final_milestone,
                                int n_milestones, int test_span_days, const WindowParams& params) {
  validate(params);
  if (n_milestones < 1) throw ConfigError("milestones.count must be >= 1");
  if (test_span_days < 1) throw ConfigError("milestones.test_span_days must be >= 1");
  if (series.empty()) throw ConfigError("milestone schedule needs at least one series");

  MilestoneSchedule schedule;
  schedule.test_span_days = test_span_days;
  for (int k = n_milestones - 1; k >= 0; --k) {
    schedule.milestones.push_back(final_milestone - k * test_span_days);
  }

  Date latest = series.front().end_date();
  std::optional<Date> earliest_usable;
  for (const auto& s : series) {
    latest = std::max(latest, s.end_date());
    if (example_count(s.values.size(), params) > 0) {
      const Date first_end = s.start_date + static_cast<int>(reach(params));
      if (!earliest_usable || first_end < *earliest_usable) earliest_usable = first_end;
    }
  }
  if (final_milestone + test_span_days > latest) {
    throw ConfigError("milestones.final " + final_milestone.iso() + ": test window ends " +
                      (final_milestone + test_span_days).iso() + ", after the last data day " +
                      latest.iso());
  }
  if (!earliest_usable || schedule.milestones.front() < *earliest_usable) {
    throw ConfigError("milestone " + schedule.milestones.front().iso() +
                      " precedes the earliest usable example" +
                      (earliest_usable ? " (" + earliest_usable->iso() + ")" : std::string()));
  }
  return schedule;
}

Split split_at(std::span<const WindowedExample> examples, Date milestone, int test_span_days) {
  Split split;
  split.milestone = milestone;
  const Date test_end = milestone + test_span_days;
  for (const auto& ex : examples) {
    if (ex.target_end_date <= milestone) {
      split.train.push_back(ex);
    } else if (ex.target_end_date <= test_end) {
      split.test.push_back(ex);
    }
  }
  return split;
}

std::vector<WindowedExample> merge_multi_country(
    const std::map<std::string, std::vector<WindowedExample>>& per_country) {
  std::vector<WindowedExample> merged;
  std::size_t total = 0;
  for (const auto& [_, list] : per_country) total += list.size();
  merged.reserve(total);
  for (const auto& [_, list] : per_country) merged.insert(merged.end(), list.begin(), list.end());
  std::stable_sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
    if (a.last_input_date != b.last_input_date) return a.last_input_date < b.last_input_date;
    return a.country < b.country;
  });
  return merged;
}

}  // namespace driftcast
