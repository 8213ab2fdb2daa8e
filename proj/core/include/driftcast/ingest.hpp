#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "driftcast/date.hpp"

namespace driftcast {

/// Header names of the columns we read. Defaults follow the ECDC daily export.
struct ColumnMapping {
  std::string date = "dateRep";
  std::string day = "day";
  std::string month = "month";
  std::string year = "year";
  std::string cases = "cases";
  std::string deaths = "deaths";
  std::string country = "countriesAndTerritories";
  std::string geo_id = "geoId";
  std::string population = "popData2019";
};

struct RawDailyRecord {
  Date report_date;
  std::string country_name;
  std::string geo_id;
  std::int64_t cases = 0;  // negative values are source corrections
  std::int64_t deaths = 0;
  std::optional<std::int64_t> population;
};

/// One country's daily new cases on a gap-free calendar.
struct CaseSeries {
  std::string country;
  Date start_date;
  std::vector<std::int64_t> values;

  Date date_at(std::size_t i) const { return start_date + static_cast<int>(i); }
  Date end_date() const { return date_at(values.size() - 1); }
};

struct CountrySelection {
  Date as_of;
  int min_months = 8;
  int top_k = 50;
  std::size_t eligible_count = 0;
  std::vector<std::string> selected;  // cumulative cases descending
};

/// Days per month used to turn `min_months` into a span requirement.
inline constexpr int kDaysPerMonth = 30;

/// Reads an ECDC-style daily CSV. The report date comes from the day/month/year
/// columns when all three are mapped and present, else from the dd/mm/yyyy
/// date column.
///
/// Throws IoError (unreadable file), SchemaError (required header missing) or
/// ParseError (bad date or cases field, wrong field count).
std::vector<RawDailyRecord> parse_csv(const std::filesystem::path& path,
                                      const ColumnMapping& columns = {});
std::vector<RawDailyRecord> parse_csv(std::istream& in, const ColumnMapping& columns = {});

/// Calendar-complete series for one country: missing days are 0, duplicate
/// dates are summed. Throws NotFoundError when the country has no records.
CaseSeries build_series(std::span<const RawDailyRecord> records, std::string_view country);

/// build_series for every country present, ordered by country name.
std::vector<CaseSeries> build_all_series(std::span<const RawDailyRecord> records);

/// Eligible countries have data starting on or before `as_of` and an inclusive
/// span up to `as_of` of at least min_months * kDaysPerMonth days. They are
/// ranked by cumulative cases through `as_of`, ties by country name.
CountrySelection select_countries(std::span<const CaseSeries> series, Date as_of,
                                  int min_months = 8, int top_k = 50);

/// Writes series back out in the ECDC column layout (one row per day, newest
/// first per country, as the portal does). Only date, cases and country
/// columns carry data; the rest are blank.
void write_csv(std::ostream& out, std::span<const CaseSeries> series);

}  // namespace driftcast
