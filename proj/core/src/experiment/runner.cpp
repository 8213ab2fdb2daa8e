#include "driftcast/experiment/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>
#include <thread>

#include "driftcast/errors.hpp"
#include "driftcast/evaluate/schemes.hpp"

namespace driftcast::experiment {

namespace {

/// Runs fn(i) for i in [0, n) on a bounded pool. The first exception (by task
/// index) is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct Task {
  std::size_t algorithm;
  Scheme scheme;
  std::size_t seed_index;
  std::size_t milestone;
  std::string country;  // empty in MC mode
};

struct TaskResult {
  std::vector<ResultRow> leaves;
  std::vector<std::string> warnings;
};

std::string seed_label(const AlgorithmSpec& spec, std::uint64_t seed) {
  return spec.stochastic ? std::to_string(seed) : std::string(kNoSeed);
}

evaluate::SchemeResult evaluate_split(const AlgorithmSpec& spec, std::uint64_t seed, Scheme scheme,
                                      const Split& split, int span) {
  auto model = spec.make(seed);
  if (scheme == Scheme::holdout) return evaluate::run_holdout(*model, split);
  auto* online = dynamic_cast<OnlineRegressor*>(model.get());
  if (online == nullptr) throw ConfigError("prequential requires incremental update support (" + spec.id + ")");
  return evaluate::run_prequential(*online, split.train, split.test,
                                   {split.milestone, split.milestone + span});
}

TaskResult run_task(const Task& task, const RunConfig& config, const Dataset& data,
                    const std::vector<AlgorithmSpec>& roster, Mode mode) {
  const AlgorithmSpec& spec = roster[task.algorithm];
  const std::uint64_t seed = config.run.seeds[task.seed_index];
  const Date milestone = data.schedule.milestones[task.milestone];
  const int span = data.schedule.test_span_days;
  const std::string seed_text = seed_label(spec, seed);
  TaskResult out;

  auto finish = [&](evaluate::MetricsReport m, const std::string& country) {
    if (!config.run.record_timing) m.wall_seconds = 0.0;
    out.leaves.push_back(make_row(spec.id, std::string(to_string(mode)), std::string(to_string(task.scheme)), country,
                                  milestone.iso(), seed_text, m));
  };
  auto warn = [&](const std::string& what) {
    out.warnings.push_back(spec.id + " " + std::string(to_string(task.scheme)) + " " + milestone.iso() + ": " + what);
  };

  if (mode == Mode::sc) {
    const Split split = split_at(data.examples.at(task.country), milestone, span);
    if (split.train.empty() || split.test.empty()) {
      warn(task.country + " has an empty " + (split.train.empty() ? "train" : "test") + " split; skipped");
      return out;
    }
    finish(evaluate_split(spec, seed, task.scheme, split, span).metrics, task.country);
    return out;
  }

  // One model over the merged countries; rows are scored per country.
  std::map<std::string, std::vector<WindowedExample>> train, test;
  for (const auto& s : data.series) {
    Split part = split_at(data.examples.at(s.country), milestone, span);
    train[s.country] = std::move(part.train);
    test[s.country] = std::move(part.test);
  }
  Split merged{merge_multi_country(train), merge_multi_country(test), milestone};
  if (merged.train.empty() || merged.test.empty()) {
    warn(std::string("merged ") + (merged.train.empty() ? "train" : "test") + " split is empty; skipped");
    return out;
  }
  const auto result = evaluate_split(spec, seed, task.scheme, merged, span);
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> per_country;
  for (const auto& p : result.predictions) {
    auto& [y, y_hat] = per_country[p.country];
    y.push_back(p.target);
    y_hat.push_back(p.prediction);
  }
  for (const auto& s : data.series) {
    const auto it = per_country.find(s.country);
    if (it == per_country.end()) {
      warn(s.country + " has no test examples; skipped");
      continue;
    }
    auto m = evaluate::compute_metrics(it->second.first, it->second.second);
    m.wall_seconds = result.metrics.wall_seconds;
    finish(m, s.country);
  }
  return out;
}

nlohmann::json roster_json(const std::vector<AlgorithmSpec>& roster) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& a : roster) {
    out.push_back({{"id", a.id},
                   {"label", a.label},
                   {"incremental", a.incremental},
                   {"stochastic", a.stochastic},
                   {"params", a.params}});
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

std::string format_mape(const std::optional<double>& v) {
  if (!v) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

}  // namespace

const char* version() {
#ifdef DRIFTCAST_VERSION
  return DRIFTCAST_VERSION;
#else
  return "unknown";
#endif
}

unsigned worker_count() {
  if (const char* env = std::getenv("DRIFTCAST_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Dataset prepare_dataset(const RunConfig& config, std::span<const RawDailyRecord> records) {
  Dataset d;
  d.n_records = records.size();
  auto all = build_all_series(records);
  d.selection = select_countries(all, config.selection.as_of, config.selection.min_months, config.selection.top_k);
  if (d.selection.selected.empty()) throw ConfigError("country selection is empty (selection.as_of / min_months / top_k)");
  std::map<std::string, CaseSeries*> by_name;
  for (auto& s : all) by_name[s.country] = &s;
  for (const auto& name : d.selection.selected) {
    d.series.push_back(std::move(*by_name.at(name)));
    d.examples[name] = make_examples(d.series.back(), config.window);
  }
  d.schedule = make_schedule(d.series, config.milestones.final_milestone, config.milestones.count,
                             config.milestones.test_span_days, config.window);
  return d;
}

Dataset load_dataset(const RunConfig& config) {
  if (config.data_path.empty()) throw ConfigError("data.path is not set");
  const auto records = parse_csv(config.data_path, config.columns);
  return prepare_dataset(config, records);
}

std::vector<AlgorithmSpec> resolve_roster(const RunConfig& config, const std::vector<std::string>& fallback) {
  const auto& ids = config.run.algorithms.empty() ? fallback : config.run.algorithms;
  std::set<std::string> seen;
  std::vector<AlgorithmSpec> roster;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) throw ConfigError("algorithm '" + id + "' listed twice in run.algorithms");
    const auto it = config.algorithm_overrides.find(id);
    roster.push_back(make_algorithm(id, it == config.algorithm_overrides.end() ? std::map<std::string, std::string>{}
                                                                                : it->second));
  }
  for (const auto& [id, _] : config.algorithm_overrides) {
    if (!seen.contains(id)) make_algorithm(id, config.algorithm_overrides.at(id));  // still validate
  }
  if (roster.empty()) throw ConfigError("run.algorithms is empty");
  return roster;
}

ExperimentOutput run_roster(const std::string& name, const RunConfig& config, const Dataset& data,
                            const std::vector<AlgorithmSpec>& roster, Mode mode,
                            const std::vector<Scheme>& schemes) {
  if (config.run.seeds.empty()) throw ConfigError("run.seeds is empty");
  for (Scheme s : schemes) {
    if (s != Scheme::prequential) continue;
    for (const auto& a : roster) {
      if (!a.incremental) throw ConfigError("prequential requires incremental update support; '" + a.id + "' is a batch learner");
    }
  }

  std::vector<Task> tasks;
  for (std::size_t a = 0; a < roster.size(); ++a) {
    for (Scheme scheme : schemes) {
      const std::size_t n_seeds = roster[a].stochastic ? config.run.seeds.size() : 1;
      for (std::size_t s = 0; s < n_seeds; ++s) {
        if (mode == Mode::sc) {
          for (const auto& series : data.series) {
            for (std::size_t m = 0; m < data.schedule.milestones.size(); ++m) {
              tasks.push_back({a, scheme, s, m, series.country});
            }
          }
        } else {
          for (std::size_t m = 0; m < data.schedule.milestones.size(); ++m) tasks.push_back({a, scheme, s, m, {}});
        }
      }
    }
  }

  std::vector<TaskResult> results(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { results[i] = run_task(tasks[i], config, data, roster, mode); });

  ExperimentOutput out;
  out.name = name;
  // Tasks are laid out block by block (algorithm, scheme, seed), so each
  // contiguous run of equal keys is one MEAN block.
  std::size_t i = 0;
  while (i < tasks.size()) {
    std::size_t j = i;
    std::vector<ResultRow> leaves;
    while (j < tasks.size() && tasks[j].algorithm == tasks[i].algorithm && tasks[j].scheme == tasks[i].scheme &&
           tasks[j].seed_index == tasks[i].seed_index) {
      for (auto& r : results[j].leaves) leaves.push_back(std::move(r));
      for (auto& w : results[j].warnings) out.warnings.push_back(std::move(w));
      ++j;
    }
    if (mode == Mode::mc) {
      // Task order is milestone-major; present rows country-major like SC.
      std::map<std::string, std::size_t> rank;
      for (std::size_t k = 0; k < data.series.size(); ++k) rank[data.series[k].country] = k;
      std::stable_sort(leaves.begin(), leaves.end(),
                       [&](const ResultRow& a, const ResultRow& b) { return rank.at(a.country) < rank.at(b.country); });
    }
    out.rows.insert(out.rows.end(), leaves.begin(), leaves.end());
    append_mean_rows(out.rows, leaves);
    const bool last_seed = j == tasks.size() || tasks[j].algorithm != tasks[i].algorithm || tasks[j].scheme != tasks[i].scheme;
    if (last_seed && roster[tasks[i].algorithm].stochastic && config.run.seeds.size() > 1) {
      std::vector<ResultRow> block;
      for (const auto& r : out.rows) {
        if (r.algorithm == roster[tasks[i].algorithm].id && r.scheme == to_string(tasks[i].scheme)) block.push_back(r);
      }
      for (auto& r : seed_mean_rows(block)) out.rows.push_back(std::move(r));
    }
    i = j;
  }

  nlohmann::json schemes_json = nlohmann::json::array();
  for (Scheme s : schemes) schemes_json.push_back(std::string(to_string(s)));
  nlohmann::json milestones = nlohmann::json::array();
  for (Date m : data.schedule.milestones) milestones.push_back(m.iso());
  nlohmann::json notes = nlohmann::json::array();
  for (const auto& a : roster) {
    if (a.id == "ridge") {
      notes.push_back("ridge uses a fixed penalty in place of Bayesian ridge's evidence maximisation");
    }
  }
  out.manifest = {
      {"experiment", name},
      {"version", version()},
      {"mode", std::string(to_string(mode))},
      {"schemes", schemes_json},
      {"config", config.to_json()},
      {"algorithms", roster_json(roster)},
      {"seeds", config.run.seeds},
      {"data",
       {{"path", config.data_path.string()},
        {"records", data.n_records},
        {"eligible_countries", data.selection.eligible_count},
        {"selected", data.selection.selected}}},
      {"milestones", milestones},
      {"test_span_days", data.schedule.test_span_days},
      {"warnings", out.warnings},
      {"notes", notes},
  };
  return out;
}

ExperimentOutput run_experiment_1(const RunConfig& config, const Dataset& data) {
  if (config.run.mode.value_or(Mode::sc) != Mode::sc) throw ConfigError("experiment 1 requires run.mode = sc");
  if (config.run.scheme.value_or(Scheme::holdout) != Scheme::holdout) throw ConfigError("experiment 1 requires run.scheme = holdout");
  return run_roster("exp1", config, data, resolve_roster(config, known_algorithms()), Mode::sc, {Scheme::holdout});
}

ExperimentOutput run_experiment_2(const RunConfig& config, const Dataset& data) {
  if (config.run.mode.value_or(Mode::mc) != Mode::mc) throw ConfigError("experiment 2 requires run.mode = mc");
  if (config.run.scheme.value_or(Scheme::holdout) != Scheme::holdout) throw ConfigError("experiment 2 requires run.scheme = holdout");
  return run_roster("exp2", config, data, resolve_roster(config, known_algorithms()), Mode::mc, {Scheme::holdout});
}

ExperimentOutput run_experiment_3(const RunConfig& config, const Dataset& data) {
  if (config.run.scheme.value_or(Scheme::prequential) != Scheme::prequential) {
    throw ConfigError("experiment 3 requires run.scheme = prequential");
  }
  return run_roster("exp3", config, data, resolve_roster(config, online_algorithms()), config.run.mode.value_or(Mode::mc),
                    {Scheme::holdout, Scheme::prequential});
}

std::vector<ResultRow> headline_rows(const std::vector<ResultRow>& rows) {
  std::set<std::tuple<std::string, std::string, std::string>> seeded;
  for (const auto& r : rows) {
    if (r.seed == kMean) seeded.insert({r.algorithm, r.mode, r.scheme});
  }
  std::vector<ResultRow> out;
  for (const auto& r : rows) {
    const bool has_mean = seeded.contains({r.algorithm, r.mode, r.scheme});
    if (has_mean ? r.seed == kMean : r.seed != kMean) out.push_back(r);
  }
  return out;
}

void write_outputs(const ExperimentOutput& output, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  std::ostringstream results;
  write_results_csv(results, output.rows);
  write_text(dir / (output.name + "_results.csv"), results.str());
  write_text(dir / (output.name + "_manifest.json"), output.manifest.dump(2) + "\n");

  const auto head = headline_rows(output.rows);
  // Per-milestone mean over countries (MAPE undefined rows left out).
  std::ostringstream by_milestone;
  by_milestone << "algorithm,mode,scheme,milestone,mape\n";
  std::map<std::tuple<std::string, std::string, std::string, std::string>, std::pair<double, std::size_t>> sums;
  std::vector<std::tuple<std::string, std::string, std::string, std::string>> order;
  for (const auto& r : head) {
    if (r.milestone == kMean) continue;
    const auto key = std::make_tuple(r.algorithm, r.mode, r.scheme, r.milestone);
    auto [it, inserted] = sums.try_emplace(key, 0.0, 0);
    if (inserted) order.push_back(key);
    if (r.mape) {
      it->second.first += *r.mape;
      ++it->second.second;
    }
  }
  std::sort(order.begin(), order.end());
  for (const auto& key : order) {
    const auto& [sum, count] = sums.at(key);
    const auto& [alg, mode, scheme, milestone] = key;
    by_milestone << alg << ',' << mode << ',' << scheme << ',' << milestone << ','
                 << format_mape(count ? std::optional<double>(sum / static_cast<double>(count)) : std::nullopt) << '\n';
  }
  write_text(dir / (output.name + "_mape_by_milestone.csv"), by_milestone.str());

  std::ostringstream by_country;
  by_country << "algorithm,mode,scheme,country,mape\n";
  for (const auto& r : head) {
    if (r.milestone != kMean || r.country == kAll) continue;
    by_country << r.algorithm << ',' << r.mode << ',' << r.scheme << ",\"" << r.country << "\"," << format_mape(r.mape)
               << '\n';
  }
  write_text(dir / (output.name + "_mape_by_country.csv"), by_country.str());
}

}  // namespace driftcast::experiment
