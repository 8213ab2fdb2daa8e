#include "driftcast/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

namespace driftcast {

std::vector<RawDailyRecord> synthetic_records(const SyntheticParams& params) {
  if (params.n_countries < 0) throw std::invalid_argument("n_countries must be >= 0");
  if (params.last_date < params.first_date) throw std::invalid_argument("last_date precedes first_date");
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int span = params.last_date - params.first_date + 1;

  std::vector<RawDailyRecord> out;
  for (int c = 0; c < params.n_countries; ++c) {
    char name[32];
    char geo[16];
    std::snprintf(name, sizeof name, "Country%02d", c + 1);
    std::snprintf(geo, sizeof geo, "C%02d", c + 1);

    const int delay = params.max_start_delay_days > 0
                          ? std::uniform_int_distribution<int>(0, params.max_start_delay_days)(rng)
                          : 0;
    // Sizes fall off with rank so cumulative totals are well separated.
    const double size = params.peak_scale * std::pow(0.93, c) * (0.8 + 0.4 * unit(rng));
    struct Wave {
      double centre, width, height;
    };
    std::vector<Wave> waves;
    for (int k = 0; k < params.waves; ++k) {
      const double centre = delay + (k + 0.5 + 0.4 * (unit(rng) - 0.5)) * (span - delay) / params.waves;
      waves.push_back({centre, 12.0 + 20.0 * unit(rng), size * (0.3 + 0.7 * unit(rng))});
    }
    const double weekday_dip = 0.15 + 0.3 * unit(rng);
    const std::int64_t population = 1'000'000 + static_cast<std::int64_t>(unit(rng) * 1e8);

    std::vector<RawDailyRecord> rows;
    // Rows run from first_date; days before the outbreak report zero cases.
    for (int day = 0; day < span; ++day) {
      double rate = day < delay ? 0.0 : 1.0;
      for (const auto& w : waves) {
        if (day < delay) break;
        const double z = (day - w.centre) / w.width;
        rate += w.height * std::exp(-0.5 * z * z);
      }
      if ((day % 7) == 6) rate *= 1.0 - weekday_dip;
      std::int64_t cases = rate > 0.0 ? std::poisson_distribution<std::int64_t>(rate)(rng) : 0;
      if (cases > 0 && unit(rng) < params.correction_rate) cases = -std::max<std::int64_t>(1, cases / 10);
      if (day > 0 && unit(rng) < params.missing_day_rate) continue;
      RawDailyRecord r;
      r.report_date = params.first_date + day;
      r.country_name = name;
      r.geo_id = geo;
      r.cases = cases;
      r.deaths = cases / 50;
      r.population = population;
      rows.push_back(std::move(r));
    }
    out.insert(out.end(), rows.rbegin(), rows.rend());
  }
  return out;
}

}  // namespace driftcast
