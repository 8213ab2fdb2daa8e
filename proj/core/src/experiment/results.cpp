#include "driftcast/experiment/results.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "driftcast/errors.hpp"

namespace driftcast::experiment {

namespace {

constexpr const char* kHeader = "algorithm,mode,scheme,country,milestone,mape,mae,rmse,seconds,n_scored,n_skipped,seed";

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

template <typename T>
T parse_field(const std::string& text, std::size_t line, const char* name) {
  T v{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(line, std::string("bad ") + name + " '" + text + "'");
  return v;
}

}  // namespace

evaluate::MetricsReport ResultRow::report() const {
  evaluate::MetricsReport m;
  m.mape = mape;
  m.mae = mae;
  m.rmse = rmse;
  m.wall_seconds = seconds;
  m.n_scored = n_scored;
  m.n_skipped_zero_target = n_skipped;
  return m;
}

ResultRow make_row(std::string algorithm, std::string mode, std::string scheme, std::string country,
                   std::string milestone, std::string seed, const evaluate::MetricsReport& m) {
  ResultRow r;
  r.algorithm = std::move(algorithm);
  r.mode = std::move(mode);
  r.scheme = std::move(scheme);
  r.country = std::move(country);
  r.milestone = std::move(milestone);
  r.seed = std::move(seed);
  r.mape = m.mape;
  r.mae = m.mae;
  r.rmse = m.rmse;
  r.seconds = m.wall_seconds;
  r.n_scored = m.n_scored;
  r.n_skipped = m.n_skipped_zero_target;
  return r;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kHeader << '\n';
  for (const auto& r : rows) {
    char seconds[32];
    std::snprintf(seconds, sizeof seconds, "%.3f", r.seconds);
    out << quote(r.algorithm) << ',' << r.mode << ',' << r.scheme << ',' << quote(r.country) << ','
        << r.milestone << ',' << (r.mape ? format_double(*r.mape, 17) : "NA") << ',' << format_double(r.mae, 17)
        << ',' << format_double(r.rmse, 17) << ',' << seconds << ',' << r.n_scored << ',' << r.n_skipped << ','
        << r.seed << '\n';
  }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("results file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw SchemaError("unexpected results header: " + line);
  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 12) throw ParseError(line_no, "expected 12 fields, found " + std::to_string(f.size()));
    ResultRow r;
    r.algorithm = f[0];
    r.mode = f[1];
    r.scheme = f[2];
    r.country = f[3];
    r.milestone = f[4];
    if (f[5] != "NA") r.mape = parse_field<double>(f[5], line_no, "mape");
    r.mae = parse_field<double>(f[6], line_no, "mae");
    r.rmse = parse_field<double>(f[7], line_no, "rmse");
    r.seconds = parse_field<double>(f[8], line_no, "seconds");
    r.n_scored = parse_field<std::size_t>(f[9], line_no, "n_scored");
    r.n_skipped = parse_field<std::size_t>(f[10], line_no, "n_skipped");
    r.seed = f[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

void append_mean_rows(std::vector<ResultRow>& rows, const std::vector<ResultRow>& leaves) {
  if (leaves.empty()) return;
  const ResultRow& proto = leaves.front();
  std::map<std::string, std::vector<evaluate::MetricsReport>> by_country;
  for (const auto& r : leaves) by_country[r.country].push_back(r.report());
  std::vector<evaluate::MetricsReport> country_means;
  for (const auto& [country, reports] : by_country) {
    const auto m = evaluate::aggregate(reports);
    country_means.push_back(m);
    rows.push_back(make_row(proto.algorithm, proto.mode, proto.scheme, country, kMean, proto.seed, m));
  }
  rows.push_back(make_row(proto.algorithm, proto.mode, proto.scheme, kAll, kMean, proto.seed,
                          evaluate::aggregate(country_means)));
}

std::vector<ResultRow> seed_mean_rows(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, std::string, std::string, std::string, std::string>;
  std::map<Key, std::vector<evaluate::MetricsReport>> groups;
  std::vector<Key> order;
  for (const auto& r : rows) {
    if (r.seed == kMean || r.seed == kNoSeed) continue;
    Key k{r.algorithm, r.mode, r.scheme, r.country, r.milestone};
    auto [it, inserted] = groups.try_emplace(k);
    if (inserted) order.push_back(k);
    it->second.push_back(r.report());
  }
  std::vector<ResultRow> out;
  for (const auto& k : order) {
    const auto& reports = groups.at(k);
    if (reports.size() < 2) continue;
    const auto& [alg, mode, scheme, country, milestone] = k;
    out.push_back(make_row(alg, mode, scheme, country, milestone, kMean, evaluate::aggregate(reports)));
  }
  return out;
}

}  // namespace driftcast::experiment
