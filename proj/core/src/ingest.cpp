#include "driftcast/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "driftcast/errors.hpp"

namespace driftcast {
namespace {

// RFC 4180 field splitting for a single physical line. Quoted fields may
// contain commas and doubled quotes.
std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<std::int64_t> to_int(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc{} && ptr == text.data() + text.size()) return value;
  // Some exports write integral counts as "746.0".
  double d = 0;
  auto [dptr, dec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (dec == std::errc{} && dptr == text.data() + text.size() && d == static_cast<double>(static_cast<std::int64_t>(d))) {
    return static_cast<std::int64_t>(d);
  }
  return std::nullopt;
}

struct ColumnIndex {
  std::optional<std::size_t> date, day, month, year, cases, deaths, country, geo_id, population;
};

ColumnIndex resolve_header(const std::vector<std::string>& header, const ColumnMapping& m) {
  auto find = [&](const std::string& name) -> std::optional<std::size_t> {
    if (name.empty()) return std::nullopt;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    return std::nullopt;
  };
  ColumnIndex idx{find(m.date),    find(m.day),     find(m.month),
                  find(m.year),    find(m.cases),   find(m.deaths),
                  find(m.country), find(m.geo_id),  find(m.population)};
  if (!idx.cases) throw SchemaError("missing required column '" + m.cases + "'");
  if (!idx.country) throw SchemaError("missing required column '" + m.country + "'");
  bool has_dmy_columns = idx.day && idx.month && idx.year;
  if (!has_dmy_columns && !idx.date) {
    throw SchemaError("missing date columns: need '" + m.date + "' or '" + m.day + "', '" +
                      m.month + "', '" + m.year + "'");
  }
  return idx;
}

}  // namespace

std::vector<RawDailyRecord> parse_csv(std::istream& in, const ColumnMapping& columns) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty input: no header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = split_fields(trim(line));
  const ColumnIndex idx = resolve_header(header, columns);
  const bool use_dmy_columns = idx.day && idx.month && idx.year;

  std::vector<RawDailyRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    auto fields = split_fields(view);
    if (fields.size() != header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    RawDailyRecord rec;
    try {
      if (use_dmy_columns) {
        auto d = to_int(fields[*idx.day]);
        auto mo = to_int(fields[*idx.month]);
        auto y = to_int(fields[*idx.year]);
        if (!d || !mo || !y || *d < 1 || *mo < 1) throw std::invalid_argument("bad day/month/year");
        rec.report_date = Date::from_ymd(static_cast<int>(*y), static_cast<unsigned>(*mo),
                                         static_cast<unsigned>(*d));
      } else {
        rec.report_date = Date::parse_dmy(trim(fields[*idx.date]));
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, std::string("malformed date: ") + e.what());
    }
    auto cases = to_int(fields[*idx.cases]);
    if (!cases) throw ParseError(line_no, "malformed cases field '" + fields[*idx.cases] + "'");
    rec.cases = *cases;
    rec.country_name = std::string(trim(fields[*idx.country]));
    if (rec.country_name.empty()) throw ParseError(line_no, "empty country identifier");
    if (idx.geo_id) rec.geo_id = std::string(trim(fields[*idx.geo_id]));
    if (idx.deaths) rec.deaths = to_int(fields[*idx.deaths]).value_or(0);
    if (idx.population) rec.population = to_int(fields[*idx.population]);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<RawDailyRecord> parse_csv(const std::filesystem::path& path,
                                      const ColumnMapping& columns) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_csv(in, columns);
}

CaseSeries build_series(std::span<const RawDailyRecord> records, std::string_view country) {
  std::optional<Date> first, last;
  for (const auto& r : records) {
    if (r.country_name != country) continue;
    if (!first || r.report_date < *first) first = r.report_date;
    if (!last || r.report_date > *last) last = r.report_date;
  }
  if (!first) throw NotFoundError("no records for country '" + std::string(country) + "'");

  CaseSeries series{std::string(country), *first, {}};
  series.values.assign(static_cast<std::size_t>(*last - *first) + 1, 0);
  for (const auto& r : records) {
    if (r.country_name == country) series.values[static_cast<std::size_t>(r.report_date - *first)] += r.cases;
  }
  return series;
}

std::vector<CaseSeries> build_all_series(std::span<const RawDailyRecord> records) {
  std::map<std::string, std::vector<RawDailyRecord>> by_country;
  for (const auto& r : records) by_country[r.country_name].push_back(r);
  std::vector<CaseSeries> out;
  out.reserve(by_country.size());
  for (const auto& [name, rows] : by_country) out.push_back(build_series(rows, name));
  return out;
}

CountrySelection select_countries(std::span<const CaseSeries> series, Date as_of, int min_months,
                                  int top_k) {
  CountrySelection sel{as_of, min_months, top_k, 0, {}};
  const int required_days = min_months * kDaysPerMonth;
  std::vector<std::pair<std::int64_t, const std::string*>> ranked;
  for (const auto& s : series) {
    if (s.values.empty() || s.start_date > as_of) continue;
    const Date covered_end = std::min(s.end_date(), as_of);
    if ((covered_end - s.start_date) + 1 < required_days) continue;
    std::int64_t total = 0;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(covered_end - s.start_date); ++i) total += s.values[i];
    ranked.emplace_back(total, &s.country);
  }
  sel.eligible_count = ranked.size();
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return *a.second < *b.second;
  });
  const auto keep = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(std::max(top_k, 0)));
  for (std::size_t i = 0; i < keep; ++i) sel.selected.push_back(*ranked[i].second);
  return sel;
}

void write_csv(std::ostream& out, std::span<const CaseSeries> series) {
  out << "dateRep,day,month,year,cases,deaths,countriesAndTerritories,geoId,"
         "countryterritoryCode,popData2019,continentExp,"
         "Cumulative_number_for_14_days_of_COVID-19_cases_per_100000\n";
  for (const auto& s : series) {
    const bool needs_quotes = s.country.find_first_of(",\"") != std::string::npos;
    std::string name = s.country;
    if (needs_quotes) {
      std::string escaped = "\"";
      for (char c : s.country) {
        if (c == '"') escaped += '"';
        escaped += c;
      }
      name = escaped + "\"";
    }
    for (std::size_t i = s.values.size(); i-- > 0;) {
      const Date d = s.date_at(i);
      out << d.dmy() << ',' << d.day() << ',' << d.month() << ',' << d.year() << ','
          << s.values[i] << ",0," << name << ",,,,,\n";
    }
  }
}

}  // namespace driftcast
