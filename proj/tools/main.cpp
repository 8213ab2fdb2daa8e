// driftcast command line: data checks, the three experiments and significance.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "driftcast/errors.hpp"
#include "driftcast/experiment/config.hpp"
#include "driftcast/experiment/runner.hpp"
#include "driftcast/experiment/significance.hpp"
#include "driftcast/ingest.hpp"
#include "driftcast/synthetic.hpp"

namespace dc = driftcast;
namespace ex = driftcast::experiment;

namespace {

enum Exit { kOk = 0, kConfig = 1, kData = 2, kInternal = 3 };

struct Common {
  std::string config_path;
  std::string data;
  std::string output;
  std::vector<std::string> sets;
  int verbose = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config_path, "Run configuration file (INI)");
  cmd->add_option("--data", c.data, "ECDC daily CSV (overrides data.path)");
  cmd->add_option("-o,--output", c.output, "Output directory (overrides run.output_dir)");
  cmd->add_option("--set", c.sets, "Override a config key, e.g. --set run.seeds=1,2,3")->take_all();
}

ex::RunConfig build_config(const Common& c) {
  ex::RunConfig config = c.config_path.empty() ? ex::RunConfig{} : ex::load_config(c.config_path);
  for (const auto& s : c.sets) ex::apply_override(config, s);
  if (!c.data.empty()) config.data_path = c.data;
  if (!c.output.empty()) config.run.output_dir = c.output;
  return config;
}

void report(const ex::ExperimentOutput& out, const ex::RunConfig& config) {
  ex::write_outputs(out, config.run.output_dir);
  for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
  std::size_t leaves = 0;
  for (const auto& r : out.rows) leaves += r.is_leaf() ? 1 : 0;
  std::cout << out.name << ": " << out.rows.size() << " rows (" << leaves << " leaf) written to "
            << (config.run.output_dir / (out.name + "_results.csv")).string() << '\n';
  for (const auto& r : ex::headline_rows(out.rows)) {
    if (r.country != ex::kAll) continue;
    std::printf("  %-8s %-3s %-11s MAPE %10s  MAE %12.3f  RMSE %12.3f  %8.3fs\n", r.algorithm.c_str(), r.mode.c_str(),
                r.scheme.c_str(), r.mape ? std::to_string(*r.mape).c_str() : "NA", r.mae, r.rmse, r.seconds);
  }
}

int ingest_check(const Common& c) {
  const auto config = build_config(c);
  if (config.data_path.empty()) throw dc::ConfigError("data.path is not set");
  const auto records = dc::parse_csv(config.data_path, config.columns);
  const auto series = dc::build_all_series(records);
  std::size_t negatives = 0;
  for (const auto& r : records) negatives += r.cases < 0 ? 1 : 0;
  std::cout << "records: " << records.size() << "\ncountries: " << series.size()
            << "\nnegative case rows: " << negatives << '\n';
  if (!series.empty()) {
    dc::Date first = series.front().start_date, last = series.front().end_date();
    for (const auto& s : series) {
      first = std::min(first, s.start_date);
      last = std::max(last, s.end_date());
    }
    std::cout << "date range: " << first.iso() << " .. " << last.iso() << '\n';
  }
  const auto sel = dc::select_countries(series, config.selection.as_of, config.selection.min_months,
                                        config.selection.top_k);
  std::cout << "eligible as of " << sel.as_of.iso() << ": " << sel.eligible_count << "\nselected (" << sel.selected.size()
            << "):";
  for (const auto& s : sel.selected) std::cout << ' ' << s;
  std::cout << '\n';
  const auto data = ex::prepare_dataset(config, records);
  std::cout << "milestones:";
  for (auto m : data.schedule.milestones) std::cout << ' ' << m.iso();
  std::cout << '\n';
  return kOk;
}

int run_significance_cmd(const Common& c, const std::vector<std::string>& inputs) {
  const auto config = build_config(c);
  std::vector<std::string> files = inputs;
  if (files.empty()) {
    for (const char* name : {"exp1", "exp2"}) {
      const auto p = config.run.output_dir / (std::string(name) + "_results.csv");
      if (std::filesystem::exists(p)) files.push_back(p.string());
    }
  }
  if (files.empty()) throw dc::ConfigError("no results files given and none found in " + config.run.output_dir.string());
  std::vector<ex::ResultRow> rows;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw dc::IoError("cannot read " + f);
    auto part = ex::read_results_csv(in);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  const auto results = ex::run_significance(rows, config.run.significance_pairs);
  std::filesystem::create_directories(config.run.output_dir);
  const auto path = config.run.output_dir / "significance.csv";
  std::ofstream out(path);
  if (!out) throw dc::IoError("cannot write " + path.string());
  ex::write_significance_csv(out, results);
  for (const auto& r : results) {
    std::cout << r.mode << ' ' << r.scheme << ' ' << r.algorithm_a << " vs " << r.algorithm_b << ": ";
    if (r.test) {
      std::cout << dc::evaluate::to_string(r.test->test) << " p=" << r.test->p_value << '\n';
    } else {
      std::cout << "skipped (" << r.skipped_reason << ")\n";
    }
  }
  std::cout << "written to " << path.string() << '\n';
  return kOk;
}

int synthesize(const std::string& path, const dc::SyntheticParams& params) {
  const auto records = dc::synthetic_records(params);
  const auto series = dc::build_all_series(records);
  std::ofstream out(path);
  if (!out) throw dc::IoError("cannot write " + path);
  dc::write_csv(out, series);
  std::cout << "wrote " << series.size() << " countries to " << path << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"driftcast: streaming regression backtests for daily case forecasting"};
  app.set_version_flag("--version", std::string(ex::version()));
  app.require_subcommand(1);

  Common common;
  std::vector<std::string> significance_inputs;
  auto* ingest = app.add_subcommand("ingest-check", "Parse the data file and report selection and milestones");
  auto* exp1 = app.add_subcommand("exp1", "Single-country hold-out evaluation");
  auto* exp2 = app.add_subcommand("exp2", "Multi-country hold-out evaluation");
  auto* exp3 = app.add_subcommand("exp3", "Hold-out vs prequential evaluation of the online learners");
  auto* sig = app.add_subcommand("significance", "Normality, Welch and Mann-Whitney tests on per-country MAPE");
  auto* all = app.add_subcommand("all", "exp1, exp2, exp3, then significance");
  for (auto* cmd : {ingest, exp1, exp2, exp3, sig, all}) add_common(cmd, common);

  auto* synth = app.add_subcommand("synthesize", "Write an ECDC-format synthetic data set");
  std::string synth_path;
  dc::SyntheticParams synth_params;
  synth->add_option("path", synth_path, "Output CSV")->required();
  synth->add_option("--countries", synth_params.n_countries, "Number of countries")->capture_default_str();
  synth->add_option("--seed", synth_params.seed, "Generator seed")->capture_default_str();
  sig->add_option("--results", significance_inputs, "Results CSV files (default: exp1 and exp2 in the output dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (synth->parsed()) return synthesize(synth_path, synth_params);
    if (ingest->parsed()) return ingest_check(common);
    if (sig->parsed()) return run_significance_cmd(common, significance_inputs);

    const auto config = build_config(common);
    const auto data = ex::load_dataset(config);
    if (exp1->parsed() || all->parsed()) report(ex::run_experiment_1(config, data), config);
    if (exp2->parsed() || all->parsed()) report(ex::run_experiment_2(config, data), config);
    if (exp3->parsed() || all->parsed()) report(ex::run_experiment_3(config, data), config);
    if (all->parsed()) return run_significance_cmd(common, {});
    return kOk;
  } catch (const dc::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const dc::Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
