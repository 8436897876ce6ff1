#include "nibble/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json_detail.hpp"
#include "nibble/baselines.hpp"
#include "nibble/parallel.hpp"
#include "nibble/rng.hpp"
#include "nibble/trace.hpp"

namespace nibble {

using detail::Json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

bool has_check(const ExperimentConfig& config, std::string_view name) { return config.checks.count(name) != 0; }

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return derive_key(seed, {static_cast<std::uint64_t>(Stream::trial), trial});
}

struct TrialTimings {
  double rounds_ms = 0.0;
  double completion_ms = 0.0;
};

// Recomputes the cleanup inputs from the post-Phase-II snapshot.
std::size_t audit_cleanup(const Graph& g, const ColoringState& post_phase2, const ColoringState& post_cleanup,
                          const CleanupAudit& audit) {
  const ConflictDegrees degrees(g, post_phase2);
  std::size_t violations = 0;
  for (const CleanupRecord& rec : audit.records) {
    for (Color c = 0; c < post_cleanup.num_colors(); ++c) {
      if (post_cleanup.in_palette(rec.vertex, c) && static_cast<double>(degrees.at(rec.vertex, c)) >= rec.threshold) {
        ++violations;
      }
    }
    if (rec.removed > 0 && rec.average > 0.0) {
      const double q = rec.threshold / rec.average;
      const double removed_fraction = static_cast<double>(rec.removed) / rec.palette_before;
      if (removed_fraction * q > 1.0 + 1e-12) ++violations;
    }
  }
  return violations;
}

TrialResult run_trial(const Graph& g, const ScheduleParams& params, const ExperimentConfig& config,
                      std::size_t index, std::vector<std::string>* trace, TrialTimings* timings) {
  TrialResult result;
  result.trial = index;
  result.seed = trial_seed(config.seed, index);

  RoundObserver observer;
  if (has_check(config, "assumption")) {
    observer.on_round_start = [&](std::size_t, const ColoringState& state, const ConflictDegrees& degrees,
                                  RoundTrace& tr) {
      const RoundTargets targets{tr.predicted_s, tr.predicted_d, tr.predicted_e};
      long failures = 0;
      for (Vertex u : state.uncolored()) {
        const VertexMeasurement m{static_cast<double>(state.palette_size(u)), degrees.average(state, u),
                                  static_cast<double>(degrees.maximum(state, u))};
        if (!witness_for(u, m, targets).ok()) ++failures;
      }
      tr.invariant_failures = failures;
      result.invariant_failures += static_cast<std::size_t>(failures);
    };
  }
  if (has_check(config, "cleanup")) {
    observer.on_after_cleanup = [&](std::size_t, const ColoringState& post_phase2, const ColoringState& post_cleanup,
                                    const CleanupAudit& audit) {
      result.cleanup_violations += audit_cleanup(g, post_phase2, post_cleanup, audit);
    };
  }

  RunOptions options;
  options.observer = &observer;
  options.check_proper_each_phase = has_check(config, "proper");
  options.stop_on_empty_palette = config.completion.strategy != CompletionStrategy::greedy_fallback;

  auto start = Clock::now();
  RunResult run;
  try {
    run = run_rounds(g, params, result.seed, options);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) throw;
    ++result.propriety_violations;
    return result;
  }
  if (timings) timings->rounds_ms += elapsed_ms(start);
  result.rounds_run = run.rounds_run;
  result.empty_palette = run.empty_palette;

  if (trace) {
    for (const RoundTrace& tr : run.trace) trace->push_back(round_json(tr, index));
  }

  if (run.status == RunStatus::completed || !options.stop_on_empty_palette) {
    start = Clock::now();
    const CompletionResult completion = complete_coloring(
        g, run.state, config.completion, derive_key(result.seed, {static_cast<std::uint64_t>(Stream::completion)}));
    if (timings) timings->completion_ms += elapsed_ms(start);
    result.completion_attempts = completion.attempts_used;
    result.conflicts_remaining = completion.failure.conflicts_remaining;
    if (completion.coloring) {
      result.success = true;
      result.verified = verify_proper(g, *completion.coloring);
      result.colors_used = completion.coloring->num_colors_used;
    }
  }

  if (trace) {
    FinalRecord fin;
    fin.trial = index;
    fin.policy = config.completion.strategy;
    fin.attempts_used = result.completion_attempts;
    fin.success = result.success;
    fin.colors_used = result.colors_used;
    fin.rounds_run = result.rounds_run;
    fin.empty_palette = result.empty_palette;
    fin.conflicts_remaining = result.conflicts_remaining;
    trace->push_back(final_json(fin));
  }
  return result;
}

Json params_json(const ScheduleParams& params) { return detail::to_json(params); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << body;
}

template <class T>
T json_get(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed, const char* where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(std::string("unknown key '") + key + "' in " + where);
  }
}

}  // namespace

const std::set<std::string, std::less<>>& known_checks() {
  static const std::set<std::string, std::less<>> names{"proper",           "cleanup",
                                                        "assumption",       "palette_survival",
                                                        "coloring_probability", "feasibility"};
  return names;
}

void ExperimentConfig::validate() const {
  if (graph.has_value() == !input_path.empty()) throw ConfigError("exactly one of graph / input must be given");
  if (graph) graph->validate();
  if (k.has_value() == num_colors.has_value()) throw ConfigError("exactly one of k / num_colors must be given");
  if (k && !(*k > 0.0 && std::isfinite(*k))) throw ConfigError("k must be positive");
  if (num_colors && *num_colors < 1) throw ConfigError("num_colors must be at least 1");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (psi && !(*psi > 0.0)) throw ConfigError("psi must be positive");
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  try {
    completion.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto& c : checks) {
    if (!known_checks().count(c)) throw ConfigError("unknown check '" + c + "'");
  }
  if ((checks.count("palette_survival") || checks.count("coloring_probability")) && estimator_trials < 30) {
    throw ConfigError("estimator_trials must be at least 30");
  }
}

ExperimentConfig config_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"graph", "input", "k", "num_colors", "completion", "trials", "seed", "psi", "beta", "checks",
                  "estimator_trials", "output", "trace"},
                 "config");

  ExperimentConfig c;
  if (j.contains("graph")) {
    const Json& gj = j["graph"];
    reject_unknown(gj, {"family", "n", "degree_target", "edge_probability", "seed"}, "graph");
    GraphFamilySpec spec;
    try {
      spec.family = parse_graph_family(json_get<std::string>(gj, "family"));
    } catch (const InvalidSpec& e) {
      throw ConfigError(e.what());
    }
    if (gj.contains("n")) spec.n = json_get<std::size_t>(gj, "n");
    if (gj.contains("degree_target")) spec.degree_target = json_get<std::size_t>(gj, "degree_target");
    if (gj.contains("edge_probability")) spec.edge_probability = json_get<double>(gj, "edge_probability");
    if (gj.contains("seed")) spec.seed = json_get<std::uint64_t>(gj, "seed");
    c.graph = spec;
  }
  if (j.contains("input")) c.input_path = json_get<std::string>(j, "input");
  if (j.contains("k")) c.k = json_get<double>(j, "k");
  if (j.contains("num_colors")) c.num_colors = json_get<std::uint64_t>(j, "num_colors");
  if (j.contains("completion")) {
    const Json& cj = j["completion"];
    reject_unknown(cj, {"strategy", "max_attempts", "resample_rounds"}, "completion");
    try {
      c.completion.strategy = parse_completion_strategy(json_get<std::string>(cj, "strategy"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (cj.contains("max_attempts")) c.completion.max_attempts = json_get<std::uint32_t>(cj, "max_attempts");
    if (cj.contains("resample_rounds")) c.completion.resample_rounds = json_get<std::uint32_t>(cj, "resample_rounds");
  }
  if (j.contains("trials")) c.trials = json_get<std::size_t>(j, "trials");
  if (j.contains("seed")) c.seed = json_get<std::uint64_t>(j, "seed");
  if (j.contains("psi")) c.psi = json_get<double>(j, "psi");
  if (j.contains("beta")) c.beta = json_get<double>(j, "beta");
  if (j.contains("checks")) {
    for (const auto& name : json_get<std::vector<std::string>>(j, "checks")) c.checks.insert(name);
  }
  if (j.contains("estimator_trials")) c.estimator_trials = json_get<std::size_t>(j, "estimator_trials");
  if (j.contains("output")) c.output = json_get<std::string>(j, "output");
  if (j.contains("trace")) c.trace_path = json_get<std::string>(j, "trace");
  return c;
}

namespace {

Json config_value(const ExperimentConfig& c) {
  Json j;
  if (c.graph) {
    j["graph"] = {{"family", to_string(c.graph->family)},
                  {"n", c.graph->n},
                  {"degree_target", c.graph->degree_target},
                  {"edge_probability", c.graph->edge_probability},
                  {"seed", c.graph->seed}};
  } else {
    j["input"] = c.input_path;
  }
  if (c.k) j["k"] = *c.k;
  if (c.num_colors) j["num_colors"] = *c.num_colors;
  j["completion"] = {{"strategy", to_string(c.completion.strategy)},
                     {"max_attempts", c.completion.max_attempts},
                     {"resample_rounds", c.completion.resample_rounds}};
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  if (c.psi) j["psi"] = *c.psi;
  j["beta"] = c.beta;
  j["checks"] = std::vector<std::string>(c.checks.begin(), c.checks.end());
  j["estimator_trials"] = c.estimator_trials;
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) {
  Json j = config_value(config);
  if (!config.output.empty()) j["output"] = config.output;
  if (!config.trace_path.empty()) j["trace"] = config.trace_path;
  return j.dump(2);
}

Graph load_graph(const ExperimentConfig& config) {
  if (config.graph) return generate(*config.graph);
  return read_dimacs(read_file(config.input_path));
}

ScheduleParams resolve_params(const ExperimentConfig& config, const Graph& g) {
  const std::uint64_t delta = g.max_degree();
  std::uint64_t colors = 0;
  if (config.num_colors) {
    colors = *config.num_colors;
  } else {
    // An edgeless graph still needs one color.
    colors = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(static_cast<double>(delta) / *config.k + 1e-9)));
  }
  ScheduleParams params = ScheduleParams::with_colors(delta, colors);
  if (config.psi) params.psi = *config.psi;
  params.beta = config.beta;
  params.validate();
  return params;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const Graph& g, std::vector<std::string>* trace) {
  config.validate();
  if (!is_triangle_free(g)) throw NotTriangleFree();

  ExperimentReport report;
  report.vertex_count = g.vertex_count();
  report.edge_count = g.edge_count();
  report.max_degree = g.max_degree();
  report.params = resolve_params(config, g);
  const Schedule sched = build_schedule(report.params);
  report.t1 = sched.t1;
  if (trace) trace->push_back(schedule_json(sched));

  std::vector<std::vector<std::string>> trial_lines(config.trials);
  report.trials.resize(config.trials);
  parallel_for(config.trials, [&](std::size_t i) {
    report.trials[i] = run_trial(g, report.params, config, i, trace ? &trial_lines[i] : nullptr, nullptr);
  });
  if (trace) {
    for (auto& lines : trial_lines) {
      for (auto& line : lines) trace->push_back(std::move(line));
    }
  }

  std::size_t successes = 0;
  double colors_sum = 0.0;
  for (const TrialResult& t : report.trials) {
    if (t.success) {
      ++successes;
      colors_sum += static_cast<double>(t.colors_used);
    }
    if ((t.success && !t.verified) || t.cleanup_violations > 0 || t.propriety_violations > 0) {
      report.checks_failed = true;
    }
  }
  report.success_rate = static_cast<double>(successes) / static_cast<double>(config.trials);
  report.mean_colors_used = successes ? colors_sum / static_cast<double>(successes) : 0.0;

  if (has_check(config, "palette_survival")) {
    report.estimators.push_back(
        estimate_palette_survival(g, report.params, config.estimator_trials, config.seed));
  }
  if (has_check(config, "coloring_probability")) {
    report.estimators.push_back(
        estimate_coloring_probability(g, report.params, config.estimator_trials, config.seed));
  }
  for (const auto& est : report.estimators) {
    if (!est.pass) report.checks_failed = true;
    if (trace) trace->push_back(estimator_json(est));
  }
  if (has_check(config, "feasibility")) {
    report.feasibility = feasibility_report(report.params);
    if (trace) trace->push_back(feasibility_json(*report.feasibility));
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Graph g = load_graph(config);
  std::vector<std::string> trace;
  ExperimentReport report = run_experiment(config, g, config.trace_path.empty() ? nullptr : &trace);
  if (!config.output.empty()) write_file(config.output, report_json(report, config) + "\n");
  if (!config.trace_path.empty()) {
    std::string body;
    for (const auto& line : trace) body += line + "\n";
    write_file(config.trace_path, body);
  }
  return report;
}

std::string report_json(const ExperimentReport& report, const ExperimentConfig& config) {
  Json j;
  j["config"] = config_value(config);
  j["graph"] = {{"vertices", report.vertex_count}, {"edges", report.edge_count}, {"max_degree", report.max_degree}};
  j["params"] = params_json(report.params);
  j["t1"] = report.t1;
  Json trials = Json::array();
  for (const TrialResult& t : report.trials) {
    Json tj;
    tj["trial"] = t.trial;
    tj["seed"] = t.seed;
    tj["success"] = t.success;
    tj["verified"] = t.verified;
    tj["rounds_run"] = t.rounds_run;
    tj["empty_palette"] = t.empty_palette ? Json{{"vertex", t.empty_palette->vertex}, {"round", t.empty_palette->round}}
                                          : Json(nullptr);
    tj["colors_used"] = t.colors_used;
    tj["completion_attempts"] = t.completion_attempts;
    tj["conflicts_remaining"] = t.conflicts_remaining;
    tj["invariant_failures"] = t.invariant_failures;
    tj["cleanup_violations"] = t.cleanup_violations;
    tj["propriety_violations"] = t.propriety_violations;
    trials.push_back(std::move(tj));
  }
  j["trials"] = std::move(trials);
  Json estimators = Json::array();
  for (const auto& est : report.estimators) estimators.push_back(detail::to_json(est));
  j["aggregate"] = {{"success_rate", report.success_rate},
                    {"mean_colors_used", report.mean_colors_used},
                    {"checks_failed", report.checks_failed},
                    {"estimators", std::move(estimators)},
                    {"feasibility", report.feasibility ? detail::to_json(*report.feasibility) : Json(nullptr)}};
  return j.dump(2);
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "trial,seed,success,verified,rounds_run,empty_palette_round,colors_used,completion_attempts,"
         "conflicts_remaining,invariant_failures,cleanup_violations,propriety_violations\n";
  for (const TrialResult& t : report.trials) {
    out << t.trial << ',' << t.seed << ',' << t.success << ',' << t.verified << ',' << t.rounds_run << ',';
    if (t.empty_palette) out << t.empty_palette->round;
    out << ',' << t.colors_used << ',' << t.completion_attempts << ',' << t.conflicts_remaining << ','
        << t.invariant_failures << ',' << t.cleanup_violations << ',' << t.propriety_violations << '\n';
  }
  return out.str();
}

int exit_status(const ExperimentReport& report) { return (report.success_rate == 0.0 || report.checks_failed) ? 1 : 0; }

std::vector<CompareRow> compare_baselines(const ExperimentConfig& config, const std::vector<GraphFamilySpec>& graphs) {
  std::vector<CompareRow> rows;
  for (const GraphFamilySpec& spec : graphs) {
    ExperimentConfig cfg = config;
    cfg.graph = spec;
    cfg.input_path.clear();
    cfg.validate();
    const Graph g = generate(spec);
    const ScheduleParams params = resolve_params(cfg, g);

    CompareRow row;
    row.family = std::string(to_string(spec.family));
    row.n = g.vertex_count();
    row.max_degree = g.max_degree();
    row.num_colors = params.num_colors();

    TrialTimings timings;
    std::size_t successes = 0;
    double colors_sum = 0.0;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      const TrialResult t = run_trial(g, params, cfg, i, nullptr, &timings);
      if (t.success && t.verified) {
        ++successes;
        colors_sum += static_cast<double>(t.colors_used);
      }
    }
    row.success_nibble = static_cast<double>(successes) / static_cast<double>(cfg.trials);
    if (successes) row.colors_nibble = colors_sum / static_cast<double>(successes);
    row.ms_rounds = timings.rounds_ms;
    row.ms_completion = timings.completion_ms;

    auto start = Clock::now();
    const Coloring greedy = greedy_color(g, natural_order(g.vertex_count()));
    row.ms_greedy = elapsed_ms(start);
    row.colors_greedy = greedy.num_colors_used;
    row.success_greedy = verify_proper(g, greedy) ? 1.0 : 0.0;

    start = Clock::now();
    const Coloring dsatur = dsatur_color(g);
    row.ms_dsatur = elapsed_ms(start);
    row.colors_dsatur = dsatur.num_colors_used;
    row.success_dsatur = verify_proper(g, dsatur) ? 1.0 : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CompareRow> compare_baselines(const ExperimentConfig& config) {
  if (config.graph) return compare_baselines(config, std::vector<GraphFamilySpec>{*config.graph});
  throw ConfigError("compare needs a generated graph family");
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  out << "family,n,delta,num_colors,colors_nibble,colors_greedy,colors_dsatur,success_nibble,success_greedy,"
         "success_dsatur,ms_rounds,ms_completion,ms_greedy,ms_dsatur\n";
  for (const CompareRow& r : rows) {
    out << r.family << ',' << r.n << ',' << r.max_degree << ',' << r.num_colors << ',';
    if (r.colors_nibble) out << *r.colors_nibble;
    out << ',' << r.colors_greedy << ',' << r.colors_dsatur << ',' << r.success_nibble << ',' << r.success_greedy
        << ',' << r.success_dsatur << ',' << r.ms_rounds << ',' << r.ms_completion << ',' << r.ms_greedy << ','
        << r.ms_dsatur << '\n';
  }
  return out.str();
}

std::string compare_json(const std::vector<CompareRow>& rows) {
  Json arr = Json::array();
  for (const CompareRow& r : rows) {
    arr.push_back({{"family", r.family},
                   {"n", r.n},
                   {"delta", r.max_degree},
                   {"num_colors", r.num_colors},
                   {"colors_nibble", r.colors_nibble ? Json(*r.colors_nibble) : Json(nullptr)},
                   {"colors_greedy", r.colors_greedy},
                   {"colors_dsatur", r.colors_dsatur},
                   {"success_nibble", r.success_nibble},
                   {"success_greedy", r.success_greedy},
                   {"success_dsatur", r.success_dsatur},
                   {"ms_rounds", r.ms_rounds},
                   {"ms_completion", r.ms_completion},
                   {"ms_greedy", r.ms_greedy},
                   {"ms_dsatur", r.ms_dsatur}});
  }
  return arr.dump(2);
}

}  // namespace nibble
