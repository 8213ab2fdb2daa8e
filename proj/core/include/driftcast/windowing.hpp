#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "driftcast/date.hpp"
#include "driftcast/ingest.hpp"

namespace driftcast {

struct WindowParams {
  int window = 50;   // input days
  int horizon = 30;  // days from last input to first target day
  int avg_len = 10;  // target is the mean of this many days
};

/// Supervised example: `window` raw daily counts (oldest first) and the mean of
/// `avg_len` days starting `horizon` days after the last input.
struct WindowedExample {
  std::vector<double> features;
  double target = 0.0;
  std::string country;
  Date last_input_date;
  Date target_start_date;
  Date target_end_date;
};

struct MilestoneSchedule {
  std::vector<Date> milestones;  // strictly increasing
  int test_span_days = 30;
};

struct Split {
  std::vector<WindowedExample> train;  // target_end_date <= milestone
  std::vector<WindowedExample> test;   // target_end_date in (milestone, milestone + span]
  Date milestone;
};

/// Number of examples make_examples produces for a series of `length` days.
std::size_t example_count(std::size_t length, const WindowParams& params = {});

/// Chronological sliding-window examples. Throws std::invalid_argument when a
/// window parameter is < 1; short series yield an empty list.
std::vector<WindowedExample> make_examples(const CaseSeries& series, const WindowParams& params = {});

/// `n_milestones` dates spaced `test_span_days` apart ending at
/// `final_milestone`. Throws ConfigError when the last test window runs past
/// the data or the first milestone precedes every usable example.
MilestoneSchedule make_schedule(std::span<const CaseSeries> series, Date final_milestone,
                                int n_milestones = 8, int test_span_days = 30,
                                const WindowParams& params = {});

/// Partition keyed on target_end_date. Examples past the test window are dropped.
Split split_at(std::span<const WindowedExample> examples, Date milestone, int test_span_days);

/// One list ordered by (last_input_date, country).
std::vector<WindowedExample> merge_multi_country(
    const std::map<std::string, std::vector<WindowedExample>>& per_country);

}  // namespace driftcast
