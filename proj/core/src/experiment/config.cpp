#include "driftcast/experiment/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "driftcast/errors.hpp"

namespace driftcast::experiment {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void bad_value(const std::string& where, const std::string& value, const char* expected) {
  throw ConfigError(where + ": expected " + expected + ", got '" + value + "'");
}

template <typename T>
T parse_number(const std::string& where, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(where, value, "a number");
  return out;
}

int parse_positive(const std::string& where, const std::string& value) {
  const int v = parse_number<int>(where, value);
  if (v < 1) bad_value(where, value, "an integer >= 1");
  return v;
}

bool parse_bool(const std::string& where, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(where, value, "true or false");
}

Date parse_date(const std::string& where, const std::string& value) {
  try {
    return Date::parse_iso(value);
  } catch (const std::exception&) {
    bad_value(where, value, "a YYYY-MM-DD date");
  }
}

void set_value(RunConfig& c, const std::string& section, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  const std::string where = section + "." + key;
  if (section.rfind("algorithm.", 0) == 0) {
    const std::string id = section.substr(10);
    if (id.empty()) throw ConfigError("empty algorithm section name");
    c.algorithm_overrides[id][key] = value;
    return;
  }
  if (section == "data") {
    if (key == "path") {
      c.data_path = value;
      return;
    }
  } else if (section == "columns") {
    static const std::map<std::string, std::string ColumnMapping::*> fields{
        {"date", &ColumnMapping::date},       {"day", &ColumnMapping::day},
        {"month", &ColumnMapping::month},     {"year", &ColumnMapping::year},
        {"cases", &ColumnMapping::cases},     {"deaths", &ColumnMapping::deaths},
        {"country", &ColumnMapping::country}, {"geo_id", &ColumnMapping::geo_id},
        {"population", &ColumnMapping::population}};
    if (auto it = fields.find(key); it != fields.end()) {
      c.columns.*(it->second) = value;
      return;
    }
  } else if (section == "selection") {
    if (key == "as_of") return void(c.selection.as_of = parse_date(where, value));
    if (key == "min_months") {
      c.selection.min_months = parse_number<int>(where, value);
      if (c.selection.min_months < 0) bad_value(where, value, "an integer >= 0");
      return;
    }
    if (key == "top_k") {
      c.selection.top_k = parse_number<int>(where, value);
      if (c.selection.top_k < 0) bad_value(where, value, "an integer >= 0");
      return;
    }
  } else if (section == "window") {
    if (key == "window") return void(c.window.window = parse_positive(where, value));
    if (key == "horizon") return void(c.window.horizon = parse_positive(where, value));
    if (key == "avg_len") return void(c.window.avg_len = parse_positive(where, value));
  } else if (section == "milestones") {
    if (key == "final") return void(c.milestones.final_milestone = parse_date(where, value));
    if (key == "count") return void(c.milestones.count = parse_positive(where, value));
    if (key == "test_span_days") return void(c.milestones.test_span_days = parse_positive(where, value));
  } else if (section == "run") {
    if (key == "mode") {
      try {
        c.run.mode = mode_from_string(value);
      } catch (const std::invalid_argument&) {
        bad_value(where, value, "sc or mc");
      }
      return;
    }
    if (key == "scheme") {
      try {
        c.run.scheme = scheme_from_string(value);
      } catch (const std::invalid_argument&) {
        bad_value(where, value, "holdout or prequential");
      }
      return;
    }
    if (key == "algorithms") return void(c.run.algorithms = split_list(value));
    if (key == "seeds") {
      c.run.seeds.clear();
      for (const auto& s : split_list(value)) c.run.seeds.push_back(parse_number<std::uint64_t>(where, s));
      if (c.run.seeds.empty()) bad_value(where, value, "at least one seed");
      return;
    }
    if (key == "output_dir") return void(c.run.output_dir = value);
    if (key == "record_timing") return void(c.run.record_timing = parse_bool(where, value));
    if (key == "significance_pairs") {
      c.run.significance_pairs.clear();
      for (const auto& p : split_list(value)) {
        const auto colon = p.find(':');
        if (colon == std::string::npos) bad_value(where, p, "a:b");
        c.run.significance_pairs.emplace_back(trim(p.substr(0, colon)), trim(p.substr(colon + 1)));
      }
      return;
    }
  } else {
    throw ConfigError("unknown section [" + section + "]");
  }
  throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
}

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::sc ? "SC" : "MC"; }
std::string_view to_string(Scheme s) { return s == Scheme::holdout ? "holdout" : "prequential"; }

Mode mode_from_string(std::string_view text) {
  if (text == "sc" || text == "SC") return Mode::sc;
  if (text == "mc" || text == "MC") return Mode::mc;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

Scheme scheme_from_string(std::string_view text) {
  if (text == "holdout") return Scheme::holdout;
  if (text == "prequential") return Scheme::prequential;
  throw std::invalid_argument("unknown scheme '" + std::string(text) + "'");
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : run.significance_pairs) pairs.push_back(a + ":" + b);
  return {
      {"data", {{"path", data_path.string()}}},
      {"columns",
       {{"date", columns.date},
        {"day", columns.day},
        {"month", columns.month},
        {"year", columns.year},
        {"cases", columns.cases},
        {"deaths", columns.deaths},
        {"country", columns.country},
        {"geo_id", columns.geo_id},
        {"population", columns.population}}},
      {"selection",
       {{"as_of", selection.as_of.iso()}, {"min_months", selection.min_months}, {"top_k", selection.top_k}}},
      {"window", {{"window", window.window}, {"horizon", window.horizon}, {"avg_len", window.avg_len}}},
      {"milestones",
       {{"final", milestones.final_milestone.iso()},
        {"count", milestones.count},
        {"test_span_days", milestones.test_span_days}}},
      {"run",
       {{"mode", run.mode ? nlohmann::json(std::string(to_string(*run.mode))) : nlohmann::json()},
        {"scheme", run.scheme ? nlohmann::json(std::string(to_string(*run.scheme))) : nlohmann::json()},
        {"algorithms", run.algorithms},
        {"seeds", run.seeds},
        {"output_dir", run.output_dir.string()},
        {"record_timing", run.record_timing},
        {"significance_pairs", pairs}}},
      {"algorithm_overrides", algorithm_overrides},
  };
}

RunConfig parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  RunConfig c;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("key '" + section + "' appears outside any section");
    }
    for (const auto& [key, value] : body) set_value(c, section, key, value.data());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  return parse_config(in);
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("override '" + std::string(assignment) + "' lacks '='");
  const std::string lhs = trim(assignment.substr(0, eq));
  const auto dot = lhs.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == lhs.size()) {
    throw ConfigError("override '" + lhs + "' must look like section.key");
  }
  std::string section = lhs.substr(0, dot);
  std::string key = lhs.substr(dot + 1);
  // Algorithm keys may be dotted themselves (tree.grace_period).
  if (lhs.rfind("algorithm.", 0) == 0) {
    const auto id_end = lhs.find('.', 10);
    if (id_end == std::string::npos) throw ConfigError("override '" + lhs + "' names no parameter");
    section = lhs.substr(0, id_end);
    key = lhs.substr(id_end + 1);
  }
  set_value(config, section, key, std::string(assignment.substr(eq + 1)));
}

}  // namespace driftcast::experiment
