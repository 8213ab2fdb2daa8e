#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "driftcast/errors.hpp"
#include "driftcast/ingest.hpp"
#include "driftcast/synthetic.hpp"
#include "oracles.hpp"

using namespace driftcast;

namespace {

const char* kHeader =
    "dateRep,day,month,year,cases,deaths,countriesAndTerritories,geoId,countryterritoryCode,popData2019,"
    "continentExp,Cumulative_number_for_14_days_of_COVID-19_cases_per_100000\n";

std::vector<RawDailyRecord> parse_text(const std::string& body) {
  std::istringstream in(kHeader + body);
  return parse_csv(in);
}

RawDailyRecord rec(Date d, std::string country, std::int64_t cases) {
  RawDailyRecord r;
  r.report_date = d;
  r.country_name = std::move(country);
  r.cases = cases;
  return r;
}

const Date d1 = Date::from_ymd(2020, 3, 1);

}  // namespace

TEST(ParseCsv, AfghanistanRow) {
  const auto rows = parse_text("14/12/2020,14,12,2020,746,6,Afghanistan,AF,AFG,38041754,Asia,9.01\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].report_date, Date::from_ymd(2020, 12, 14));
  EXPECT_EQ(rows[0].cases, 746);
  EXPECT_EQ(rows[0].deaths, 6);
  EXPECT_EQ(rows[0].country_name, "Afghanistan");
  EXPECT_EQ(rows[0].geo_id, "AF");
  EXPECT_EQ(rows[0].population, 38041754);
}

TEST(ParseCsv, HeaderOnlyGivesNoRecords) { EXPECT_TRUE(parse_text("").empty()); }

TEST(ParseCsv, NegativeCorrectionsPreserved) {
  const auto rows = parse_text("02/03/2020,2,3,2020,-5,0,Spain,ES,ESP,46937060,Europe,\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].cases, -5);
}

TEST(ParseCsv, EmptyPopulationIsAbsent) {
  const auto rows = parse_text("02/03/2020,2,3,2020,3,0,Somewhere,SW,,,Other,\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].population.has_value());
}

TEST(ParseCsv, QuotedCountryWithComma) {
  const auto rows =
      parse_text("02/03/2020,2,3,2020,3,0,\"Bonaire, Saint Eustatius and Saba\",BQ,BES,25979,America,\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].country_name, "Bonaire, Saint Eustatius and Saba");
}

TEST(ParseCsv, RowErrorsCarryLineNumbers) {
  try {
    parse_text("01/03/2020,1,3,2020,3,0,A,A,,,x,\n31/02/2020,31,2,2020,3,0,A,A,,,x,\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_text("01/03/2020,1,3,2020,many,0,A,A,,,x,\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_text("01/03/2020,1,3\n"), ParseError);
}

TEST(ParseCsv, SchemaAndIoErrors) {
  std::istringstream no_cases("dateRep,countriesAndTerritories\n01/03/2020,A\n");
  EXPECT_THROW(parse_csv(no_cases), SchemaError);
  std::istringstream empty("");
  EXPECT_THROW(parse_csv(empty), SchemaError);
  EXPECT_THROW(parse_csv(std::filesystem::path("/nonexistent/ecdc.csv")), IoError);
}

TEST(ParseCsv, ColumnMappingIsConfigurable) {
  std::istringstream in("when,n,who\n05/04/2020,9,X\n");
  ColumnMapping m;
  m.date = "when";
  m.cases = "n";
  m.country = "who";
  const auto rows = parse_csv(in, m);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].report_date, Date::from_ymd(2020, 4, 5));
  EXPECT_EQ(rows[0].cases, 9);
}

TEST(BuildSeries, FillsGapsWithZero) {
  const std::vector<RawDailyRecord> r{rec(d1 + 2, "A", 7), rec(d1, "A", 5)};
  const auto s = build_series(r, "A");
  EXPECT_EQ(s.start_date, d1);
  EXPECT_EQ(s.values, (std::vector<std::int64_t>{5, 0, 7}));
}

TEST(BuildSeries, SumsDuplicateDates) {
  const std::vector<RawDailyRecord> r{rec(d1, "A", 5), rec(d1, "A", 2)};
  EXPECT_EQ(build_series(r, "A").values, (std::vector<std::int64_t>{7}));
}

TEST(BuildSeries, UnknownCountryThrows) {
  const std::vector<RawDailyRecord> r{rec(d1, "A", 5)};
  EXPECT_THROW(build_series(r, "B"), NotFoundError);
}

TEST(BuildSeries, SpanAndTotalsMatchRawRowsOnShuffledInput) {
  auto records = synthetic_records({.n_countries = 5, .seed = 3});
  std::mt19937_64 rng(1);
  std::shuffle(records.begin(), records.end(), rng);
  std::map<std::string, std::pair<Date, Date>> span;
  std::map<std::string, std::int64_t> totals;
  for (const auto& r : records) {
    auto [it, inserted] = span.try_emplace(r.country_name, r.report_date, r.report_date);
    it->second.first = std::min(it->second.first, r.report_date);
    it->second.second = std::max(it->second.second, r.report_date);
    totals[r.country_name] += r.cases;
  }
  for (const auto& [country, range] : span) {
    const auto s = build_series(records, country);
    EXPECT_EQ(static_cast<int>(s.values.size()), range.second - range.first + 1) << country;
    EXPECT_EQ(s.start_date, range.first);
    EXPECT_EQ(std::accumulate(s.values.begin(), s.values.end(), std::int64_t{0}), totals[country]);
  }
}

TEST(BuildSeries, WriteParseRoundTripPreservesTotals) {
  const auto records = synthetic_records({.n_countries = 4, .seed = 9});
  const auto series = build_all_series(records);
  std::ostringstream out;
  write_csv(out, series);
  std::istringstream in(out.str());
  const auto again = build_all_series(parse_csv(in));
  ASSERT_EQ(again.size(), series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    EXPECT_EQ(again[i].country, series[i].country);
    EXPECT_EQ(again[i].start_date, series[i].start_date);
    EXPECT_EQ(again[i].values, series[i].values);
  }
}

TEST(SelectCountries, RanksByCumulativeCasesThenName) {
  const Date start = Date::from_ymd(2020, 1, 1);
  std::vector<CaseSeries> s{
      oracle::make_series("B", start, std::vector<std::int64_t>(300, 2)),
      oracle::make_series("A", start, std::vector<std::int64_t>(300, 2)),
      oracle::make_series("C", start, std::vector<std::int64_t>(300, 3)),
      oracle::make_series("Short", start, std::vector<std::int64_t>(100, 50)),
      oracle::make_series("Late", start + 400, std::vector<std::int64_t>(300, 50)),
  };
  const auto sel = select_countries(s, start + 299, 8, 50);
  EXPECT_EQ(sel.eligible_count, 3u);
  EXPECT_EQ(sel.selected, (std::vector<std::string>{"C", "A", "B"}));
  EXPECT_EQ(select_countries(s, start + 299, 8, 2).selected, (std::vector<std::string>{"C", "A"}));
  EXPECT_TRUE(select_countries(s, start + 299, 8, 0).selected.empty());
}

TEST(SelectCountries, EightMonthsMeans240Days) {
  const Date start = Date::from_ymd(2020, 1, 1);
  std::vector<CaseSeries> s{oracle::make_series("A", start, std::vector<std::int64_t>(400, 1))};
  EXPECT_EQ(select_countries(s, start + 239, 8, 50).eligible_count, 1u);  // 240 days inclusive
  EXPECT_EQ(select_countries(s, start + 238, 8, 50).eligible_count, 0u);
}

TEST(SelectCountries, CountsOnlyCasesUpToAsOf) {
  const Date start = Date::from_ymd(2020, 1, 1);
  std::vector<std::int64_t> late_surge(300, 1);
  late_surge[299] = 100000;
  std::vector<CaseSeries> s{oracle::make_series("Surge", start, late_surge),
                            oracle::make_series("Steady", start, std::vector<std::int64_t>(300, 2))};
  EXPECT_EQ(select_countries(s, start + 298, 8, 1).selected, (std::vector<std::string>{"Steady"}));
  EXPECT_EQ(select_countries(s, start + 299, 8, 1).selected, (std::vector<std::string>{"Surge"}));
}

TEST(SelectCountries, Deterministic) {
  const auto series = build_all_series(synthetic_records({.n_countries = 30, .seed = 5}));
  const Date as_of = Date::from_ymd(2020, 11, 30);
  EXPECT_EQ(select_countries(series, as_of).selected, select_countries(series, as_of).selected);
}

// Checks against the published ECDC export when DRIFTCAST_ECDC_CSV names it.
class RealFile : public ::testing::Test {
 protected:
  void SetUp() override {
    const char* path = std::getenv("DRIFTCAST_ECDC_CSV");
    if (path == nullptr || !std::filesystem::exists(path)) GTEST_SKIP() << "DRIFTCAST_ECDC_CSV not set";
    records_ = parse_csv(std::filesystem::path(path));
  }
  std::vector<RawDailyRecord> records_;
};

TEST_F(RealFile, SixtySixEligibleCountries) {
  const auto series = build_all_series(records_);
  const auto sel = select_countries(series, Date::from_ymd(2020, 11, 30));
  EXPECT_EQ(sel.eligible_count, 66u);
  ASSERT_EQ(sel.selected.size(), 50u);
  for (const char* c : {"United_States_of_America", "India", "Brazil", "Russia", "France"}) {
    EXPECT_NE(std::find(sel.selected.begin(), sel.selected.end(), c), sel.selected.end()) << c;
  }
}

TEST_F(RealFile, SpainSpan) {
  Date first = Date::from_ymd(2100, 1, 1), last = Date::from_ymd(1900, 1, 1);
  for (const auto& r : records_) {
    if (r.country_name != "Spain") continue;
    first = std::min(first, r.report_date);
    last = std::max(last, r.report_date);
  }
  EXPECT_EQ(static_cast<int>(build_series(records_, "Spain").values.size()), last - first + 1);
}

TEST_F(RealFile, ContainsNegativeCorrections) {
  EXPECT_TRUE(std::any_of(records_.begin(), records_.end(), [](const auto& r) { return r.cases < 0; }));
}
