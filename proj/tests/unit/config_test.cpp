#include <gtest/gtest.h>

#include <sstream>

#include "driftcast/errors.hpp"
#include "driftcast/experiment/config.hpp"

using namespace driftcast;
using namespace driftcast::experiment;

namespace {
RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}
}  // namespace

TEST(Config, DefaultsWhenEmpty) {
  const auto c = parse("");
  EXPECT_EQ(c.selection.as_of, Date::from_ymd(2020, 11, 30));
  EXPECT_EQ(c.selection.top_k, 50);
  EXPECT_EQ(c.selection.min_months, 8);
  EXPECT_EQ(c.milestones.final_milestone, Date::from_ymd(2020, 10, 31));
  EXPECT_EQ(c.milestones.count, 8);
  EXPECT_EQ(c.window.window, 50);
  EXPECT_EQ(c.window.horizon, 30);
  EXPECT_EQ(c.window.avg_len, 10);
  EXPECT_FALSE(c.run.mode);
  EXPECT_FALSE(c.run.scheme);
  EXPECT_EQ(c.run.seeds, (std::vector<std::uint64_t>{0}));
}

TEST(Config, ParsesEverySection) {
  const auto c = parse(R"(
# comment
[data]
path = /tmp/cases.csv
[columns]
cases = new_cases
[selection]
as_of = 2020-12-01
min_months = 6
top_k = 10
[window]
window = 40
horizon = 20
avg_len = 7
[milestones]
final = 2020-09-30
count = 4
test_span_days = 14
[run]
mode = mc
scheme = prequential
algorithms = ht, arf
seeds = 1,2,3
output_dir = out
record_timing = false
significance_pairs = ht:arf
; another comment
[algorithm.arf]
ensemble_size = 3
tree.grace_period = 100
)");
  EXPECT_EQ(c.data_path, "/tmp/cases.csv");
  EXPECT_EQ(c.columns.cases, "new_cases");
  EXPECT_EQ(c.selection.as_of, Date::from_ymd(2020, 12, 1));
  EXPECT_EQ(c.selection.top_k, 10);
  EXPECT_EQ(c.window.window, 40);
  EXPECT_EQ(c.window.avg_len, 7);
  EXPECT_EQ(c.milestones.count, 4);
  EXPECT_EQ(c.milestones.test_span_days, 14);
  EXPECT_EQ(*c.run.mode, Mode::mc);
  EXPECT_EQ(*c.run.scheme, Scheme::prequential);
  EXPECT_EQ(c.run.algorithms, (std::vector<std::string>{"ht", "arf"}));
  EXPECT_EQ(c.run.seeds, (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(c.run.output_dir, "out");
  EXPECT_FALSE(c.run.record_timing);
  ASSERT_EQ(c.run.significance_pairs.size(), 1u);
  EXPECT_EQ(c.run.significance_pairs[0].first, "ht");
  EXPECT_EQ(c.algorithm_overrides.at("arf").at("ensemble_size"), "3");
  EXPECT_EQ(c.algorithm_overrides.at("arf").at("tree.grace_period"), "100");
}

TEST(Config, RejectsUnknownKeysAndSections) {
  EXPECT_THROW(parse("[run]\nmdoe = sc\n"), ConfigError);
  EXPECT_THROW(parse("[plots]\nwidth = 3\n"), ConfigError);
  EXPECT_THROW(parse("stray = 1\n"), ConfigError);
  EXPECT_THROW(parse("[run]\nmode = sc\nmode = mc\n"), ConfigError);
}

TEST(Config, RejectsBadValues) {
  EXPECT_THROW(parse("[window]\nwindow = 0\n"), ConfigError);
  EXPECT_THROW(parse("[window]\nwindow = ten\n"), ConfigError);
  EXPECT_THROW(parse("[selection]\nas_of = 30/11/2020\n"), ConfigError);
  EXPECT_THROW(parse("[run]\nmode = both\n"), ConfigError);
  EXPECT_THROW(parse("[run]\nrecord_timing = maybe\n"), ConfigError);
  EXPECT_THROW(parse("[run]\nsignificance_pairs = ht-arf\n"), ConfigError);
  EXPECT_THROW(parse("[run]\nseeds = \n"), ConfigError);
}

TEST(Config, ErrorNamesTheKey) {
  try {
    parse("[milestones]\ncount = -2\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("milestones.count"), std::string::npos) << e.what();
  }
}

TEST(Config, Overrides) {
  RunConfig c;
  apply_override(c, "run.mode=sc");
  apply_override(c, "window.horizon = 15");
  apply_override(c, "algorithm.arf.tree.grace_period=50");
  EXPECT_EQ(*c.run.mode, Mode::sc);
  EXPECT_EQ(c.window.horizon, 15);
  EXPECT_EQ(c.algorithm_overrides.at("arf").at("tree.grace_period"), "50");
  EXPECT_THROW(apply_override(c, "run.mode"), ConfigError);
  EXPECT_THROW(apply_override(c, "nokey=1"), ConfigError);
  EXPECT_THROW(apply_override(c, "algorithm.arf=1"), ConfigError);
  EXPECT_THROW(apply_override(c, "run.colour=red"), ConfigError);
}

TEST(Config, JsonEchoesEverything) {
  auto c = parse("[run]\nseeds = 4\nalgorithms = pa\n[algorithm.pa]\nc = 0.5\n");
  const auto j = c.to_json();
  EXPECT_EQ(j.at("run").at("seeds"), nlohmann::json::array({4}));
  EXPECT_TRUE(j.at("run").at("mode").is_null());
  EXPECT_EQ(j.at("algorithm_overrides").at("pa").at("c"), "0.5");
  EXPECT_EQ(j.at("milestones").at("final"), "2020-10-31");
}

TEST(Config, ModeAndSchemeStrings) {
  EXPECT_EQ(to_string(Mode::sc), "SC");
  EXPECT_EQ(to_string(Scheme::prequential), "prequential");
  EXPECT_EQ(mode_from_string("MC"), Mode::mc);
  EXPECT_THROW(scheme_from_string("kfold"), std::invalid_argument);
}
