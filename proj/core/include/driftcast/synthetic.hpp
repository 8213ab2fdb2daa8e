#pragma once

#include <cstdint>
#include <vector>

#include "driftcast/date.hpp"
#include "driftcast/ingest.hpp"

namespace driftcast {

/// Knobs for an ECDC-shaped synthetic data set: each country gets a few
/// epidemic waves of random timing and size, a weekly reporting cycle, Poisson
/// noise, unreported days and the occasional negative correction.
struct SyntheticParams {
  int n_countries = 50;
  Date first_date = Date::from_ymd(2019, 12, 31);
  Date last_date = Date::from_ymd(2020, 12, 14);
  int max_start_delay_days = 90;  // country start dates are spread over this range
  int waves = 3;
  double peak_scale = 5000.0;  // largest country peak, roughly
  double missing_day_rate = 0.02;
  double correction_rate = 0.002;
  std::uint64_t seed = 7;
};

/// Records newest first per country, as the portal lists them. Country names
/// are "Country01", "Country02", ... with geo ids "C01", ...
std::vector<RawDailyRecord> synthetic_records(const SyntheticParams& params = {});

}  // namespace driftcast
