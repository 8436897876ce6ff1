#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nibble/analysis.hpp"
#include "nibble/experiment.hpp"
#include "nibble/schedule.hpp"
#include "nibble/trace.hpp"

namespace {

using namespace nibble;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// Accepts integers written in scientific notation, e.g. 1e12.
const CLI::Validator kIntegerNotation(
    [](std::string& value) {
      std::size_t used = 0;
      long double x = 0;
      try {
        x = std::stold(value, &used);
      } catch (const std::exception&) {
        return std::string("not a number: ") + value;
      }
      if (used != value.size() || x < 0 || x > 1.8e19L || x != std::floor(x)) {
        return std::string("not a non-negative integer: ") + value;
      }
      value = std::to_string(static_cast<std::uint64_t>(x));
      return std::string();
    },
    "INTEGER");

// Flags shared by the experiment subcommands. Unset flags leave the config
// file value alone.
struct Flags {
  std::string config_path;
  std::optional<std::string> family;
  std::optional<std::size_t> n;
  std::optional<std::size_t> degree;
  std::optional<double> edge_probability;
  std::optional<std::uint64_t> graph_seed;
  std::optional<std::string> input;
  std::optional<double> k;
  std::optional<std::uint64_t> colors;
  std::optional<std::string> policy;
  std::optional<std::uint32_t> attempts;
  std::optional<std::uint32_t> resample_rounds;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> psi;
  std::optional<double> beta;
  std::optional<std::vector<std::string>> checks;
  std::optional<std::size_t> estimator_trials;
  std::optional<std::string> out;
  std::optional<std::string> trace;
  std::string format = "json";
};

void add_graph_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its keys");
  cmd->add_option("--family", f.family,
                  "cycle | complete_bipartite | random_bipartite | random_triangle_free | "
                  "regular_high_girth_attempt");
  cmd->add_option("--n", f.n, "vertex count");
  cmd->add_option("--degree", f.degree, "degree target (side size for complete_bipartite)");
  cmd->add_option("--p", f.edge_probability, "edge probability")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--graph-seed", f.graph_seed, "generator seed");
  cmd->add_option("--input", f.input, "DIMACS .col file instead of a generated graph");
}

void add_run_flags(CLI::App* cmd, Flags& f) {
  add_graph_flags(cmd, f);
  cmd->add_option("--k", f.k, "colors = floor(delta / k)");
  cmd->add_option("--colors", f.colors, "explicit number of colors");
  cmd->add_option("--policy", f.policy, "single_shot | retry | local_resample | greedy_fallback");
  cmd->add_option("--attempts", f.attempts, "completion attempts");
  cmd->add_option("--resample-rounds", f.resample_rounds, "local_resample budget in multiples of n");
  cmd->add_option("--trials", f.trials, "number of trials");
  cmd->add_option("--seed", f.seed, "experiment seed");
  cmd->add_option("--psi", f.psi, "psi (default 3 ln delta)");
  cmd->add_option("--beta", f.beta, "beta (default 1)");
  cmd->add_option("--checks", f.checks, "enabled checks")->delimiter(',');
  cmd->add_option("--estimator-trials", f.estimator_trials, "trials for the estimator checks");
  cmd->add_option("--out", f.out, "report path (default stdout)");
  cmd->add_option("--trace", f.trace, "JSON-lines trace path");
  cmd->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv"}));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::optional<std::string>& path, const std::string& body) {
  if (!path || *path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + *path + "'");
  out << body;
}

ExperimentConfig build_config(const Flags& f) {
  ExperimentConfig c;
  if (!f.config_path.empty()) c = config_from_json(read_text(f.config_path));

  if (f.input) {
    c.input_path = *f.input;
    c.graph.reset();
  }
  if (f.family || f.n || f.degree || f.edge_probability || f.graph_seed) {
    GraphFamilySpec spec = c.graph.value_or(GraphFamilySpec{});
    if (f.family) spec.family = parse_graph_family(*f.family);
    if (f.n) spec.n = *f.n;
    if (f.degree) spec.degree_target = *f.degree;
    if (f.edge_probability) spec.edge_probability = *f.edge_probability;
    if (f.graph_seed) spec.seed = *f.graph_seed;
    c.graph = spec;
    if (!f.input) c.input_path.clear();
  }
  if (f.k) {
    c.k = *f.k;
    c.num_colors.reset();
  }
  if (f.colors) {
    c.num_colors = *f.colors;
    c.k.reset();
  }
  if (f.policy) c.completion.strategy = parse_completion_strategy(*f.policy);
  if (f.attempts) c.completion.max_attempts = *f.attempts;
  if (f.resample_rounds) c.completion.resample_rounds = *f.resample_rounds;
  if (f.trials) c.trials = *f.trials;
  if (f.seed) c.seed = *f.seed;
  if (f.psi) c.psi = *f.psi;
  if (f.beta) c.beta = *f.beta;
  if (f.checks) c.checks = {f.checks->begin(), f.checks->end()};
  if (f.estimator_trials) c.estimator_trials = *f.estimator_trials;
  if (f.out) c.output = *f.out;
  if (f.trace) c.trace_path = *f.trace;
  return c;
}

std::optional<std::string> path_or_stdout(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return path;
}

int cmd_generate(const Flags& f) {
  ExperimentConfig c = build_config(f);
  if (!c.graph) throw ConfigError("generate needs --family (or a graph in --config)");
  const Graph g = generate(*c.graph);
  std::string body;
  if (f.format == "csv") {
    body = "u,v\n";
    for (const auto& [u, v] : g.edges()) body += std::to_string(u) + "," + std::to_string(v) + "\n";
  } else if (f.format == "json") {
    nlohmann::ordered_json j;
    j["vertices"] = g.vertex_count();
    j["max_degree"] = g.max_degree();
    j["triangle_free"] = is_triangle_free(g);
    j["edges"] = g.edges();
    body = j.dump() + "\n";
  } else {
    body = write_dimacs(g);
  }
  emit(path_or_stdout(c.output), body);
  return kExitOk;
}

int cmd_color(const Flags& f) {
  const ExperimentConfig c = build_config(f);
  c.validate();
  const Graph g = load_graph(c);
  std::vector<std::string> trace;
  const ExperimentReport report = run_experiment(c, g, c.trace_path.empty() ? nullptr : &trace);
  emit(path_or_stdout(c.output), f.format == "csv" ? report_csv(report) : report_json(report, c) + "\n");
  if (!c.trace_path.empty()) {
    std::string body;
    for (const auto& line : trace) body += line + "\n";
    emit(c.trace_path, body);
  }
  return exit_status(report) == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_estimate(const Flags& f) {
  ExperimentConfig c = build_config(f);
  // --trials counts round-0 executions here.
  if (f.trials) c.estimator_trials = *f.trials;
  c.trials = 1;
  const bool any = c.checks.count("palette_survival") || c.checks.count("coloring_probability");
  if (!any) c.checks.insert({"palette_survival", "coloring_probability"});
  c.validate();
  const Graph g = load_graph(c);
  if (!is_triangle_free(g)) throw NotTriangleFree();
  const ScheduleParams params = resolve_params(c, g);

  std::vector<EstimatorReport> reports;
  if (c.checks.count("palette_survival")) {
    reports.push_back(estimate_palette_survival(g, params, c.estimator_trials, c.seed));
  }
  if (c.checks.count("coloring_probability")) {
    reports.push_back(estimate_coloring_probability(g, params, c.estimator_trials, c.seed));
  }
  bool pass = true;
  std::string body;
  if (f.format == "csv") {
    body = "name,trials,empirical_mean,standard_error,predicted,exact,window_lo,window_hi,pass\n";
    for (const auto& r : reports) {
      std::ostringstream row;
      row.precision(17);
      row << r.name << ',' << r.trials << ',' << r.empirical_mean << ',' << r.standard_error << ',' << r.predicted
          << ',';
      if (r.exact) row << *r.exact;
      row << ',' << r.window_lo << ',' << r.window_hi << ',' << (r.pass ? "true" : "false") << '\n';
      body += row.str();
    }
  } else {
    for (const auto& r : reports) body += estimator_json(r) + "\n";
  }
  for (const auto& r : reports) pass = pass && r.pass;
  emit(path_or_stdout(c.output), body);
  if (!c.trace_path.empty()) emit(c.trace_path, body);
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_compare(const Flags& f) {
  const ExperimentConfig c = build_config(f);
  const auto rows = compare_baselines(c);
  emit(path_or_stdout(c.output), f.format == "json" ? compare_json(rows) + "\n" : compare_csv(rows));
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.success_greedy == 1.0 && r.success_dsatur == 1.0;
  return ok ? kExitOk : kExitCheckFailed;
}

struct ScheduleFlags {
  std::optional<std::uint64_t> delta;
  std::optional<double> k;
  std::optional<std::uint64_t> colors;
  std::optional<double> psi;
  double beta = 1.0;
  bool frontier = false;
  double divisor = 67.0;
  std::uint64_t delta_min = 100;
  std::uint64_t delta_max = 1'000'000'000'000ULL;
  double grid_ratio = 1.1;
  FeasibilityMargins margins;
  std::optional<std::string> out;
  std::string format = "json";
};

std::string schedule_csv(const Schedule& s) {
  std::ostringstream out;
  out.precision(17);
  out << "t,d,s,e,p\n";
  for (std::size_t t = 0; t <= s.t1; ++t) {
    out << t << ',' << s.d[t] << ',' << s.s[t] << ',' << s.e[t] << ',' << s.p[t] << '\n';
  }
  return out.str();
}

int cmd_schedule(const ScheduleFlags& f) {
  if (f.frontier) {
    const FrontierReport r = feasibility_frontier(f.divisor, f.delta_min, f.delta_max, f.grid_ratio, f.margins);
    if (f.format == "csv") {
      std::ostringstream out;
      out.precision(17);
      out << "delta,k,t1,s_t1,psi,e_t1,trivial,feasible\n";
      for (const auto& pt : r.points) {
        out << pt.params.delta << ',' << pt.params.k << ',' << pt.t1 << ',' << pt.s_t1 << ',' << pt.params.psi << ','
            << pt.e_t1 << ',' << pt.trivial << ',' << pt.feasible << '\n';
      }
      emit(f.out, out.str());
    } else {
      emit(f.out, frontier_json(r) + "\n");
    }
    std::cerr << "first nontrivial delta: " << r.first_nontrivial_delta << "\n";
    if (r.threshold_delta) {
      std::cerr << "feasible for every scanned delta >= " << *r.threshold_delta << "\n";
    } else {
      std::cerr << "no feasibility threshold in the scanned range\n";
    }
    return r.threshold_delta ? kExitOk : kExitCheckFailed;
  }

  if (!f.delta) throw ConfigError("schedule needs --delta (or --frontier)");
  if (f.k.has_value() == f.colors.has_value()) throw ConfigError("schedule needs exactly one of --k / --colors");
  ScheduleParams params = f.k ? ScheduleParams::with_k(*f.delta, *f.k) : ScheduleParams::with_colors(*f.delta, *f.colors);
  if (f.psi) params.psi = *f.psi;
  params.beta = f.beta;
  params.validate();
  const Schedule s = build_schedule(params);
  const FeasibilityReport feas = feasibility_report(params, f.margins);
  if (f.format == "csv") {
    emit(f.out, schedule_csv(s));
  } else {
    emit(f.out, schedule_json(s) + "\n" + feasibility_json(feas) + "\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-random coloring of triangle-free graphs"};
  app.require_subcommand(1);

  Flags gen_flags, color_flags, estimate_flags, compare_flags;
  gen_flags.format = "dimacs";
  compare_flags.format = "csv";
  ScheduleFlags sched_flags;

  auto* gen = app.add_subcommand("generate", "generate a triangle-free graph");
  add_graph_flags(gen, gen_flags);
  gen->add_option("--out", gen_flags.out, "output path (default stdout)");
  gen->add_option("--format", gen_flags.format, "output format")->check(CLI::IsMember({"dimacs", "json", "csv"}));

  auto* color = app.add_subcommand("color", "run seeded coloring trials");
  add_run_flags(color, color_flags);

  auto* estimate = app.add_subcommand("estimate", "round-0 Monte Carlo estimators");
  add_run_flags(estimate, estimate_flags);

  auto* compare = app.add_subcommand("compare", "compare against greedy and DSATUR");
  add_run_flags(compare, compare_flags);

  auto* sched = app.add_subcommand("schedule", "print d/s/e sequences and feasibility");
  sched->add_option("--delta", sched_flags.delta, "maximum degree")->transform(kIntegerNotation);
  sched->add_option("--k", sched_flags.k, "k (colors = delta / k)");
  sched->add_option("--colors", sched_flags.colors, "explicit number of colors");
  sched->add_option("--psi", sched_flags.psi, "psi (default 3 ln delta)");
  sched->add_option("--beta", sched_flags.beta, "beta");
  sched->add_flag("--frontier", sched_flags.frontier, "scan k = ln(delta) / divisor over a delta grid");
  sched->add_option("--divisor", sched_flags.divisor, "frontier divisor");
  sched->add_option("--delta-min", sched_flags.delta_min, "frontier grid start")->transform(kIntegerNotation);
  sched->add_option("--delta-max", sched_flags.delta_max, "frontier grid end")->transform(kIntegerNotation);
  sched->add_option("--grid-ratio", sched_flags.grid_ratio, "frontier grid ratio");
  sched->add_option("--s-margin", sched_flags.margins.s_over_psi, "require s_t1 >= margin * psi");
  sched->add_option("--e-max", sched_flags.margins.e_max, "require e_t1 <= e_max");
  sched->add_option("--out", sched_flags.out, "output path (default stdout)");
  sched->add_option("--format", sched_flags.format, "output format")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(gen_flags);
    if (*color) return cmd_color(color_flags);
    if (*estimate) return cmd_estimate(estimate_flags);
    if (*compare) return cmd_compare(compare_flags);
    if (*sched) return cmd_schedule(sched_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
