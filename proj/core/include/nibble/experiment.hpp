#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nibble/analysis.hpp"
#include "nibble/completion.hpp"
#include "nibble/engine.hpp"
#include "nibble/graph.hpp"
#include "nibble/schedule.hpp"

namespace nibble {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Names accepted in ExperimentConfig::checks.
///   proper                partial coloring verified after every phase
///   cleanup               cleanup threshold and removal-fraction audit
///   assumption            per-round invariant witnesses (reported only)
///   palette_survival      round-0 survival estimator
///   coloring_probability  round-0 coloring estimator
///   feasibility           schedule feasibility report (reported only)
const std::set<std::string, std::less<>>& known_checks();

struct ExperimentConfig {
  /// Exactly one of `graph` / `input_path` describes the instance.
  std::optional<GraphFamilySpec> graph;
  std::string input_path;

  /// Exactly one of `k` / `num_colors`.
  std::optional<double> k;
  std::optional<std::uint64_t> num_colors;

  CompletionPolicy completion;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<double> psi;
  double beta = 1.0;
  std::set<std::string, std::less<>> checks;
  /// Trials for the estimator checks.
  std::size_t estimator_trials = 1000;
  std::string output;
  std::string trace_path;

  void validate() const;
};

/// Parses a single JSON document; unknown keys are rejected.
ExperimentConfig config_from_json(std::string_view text);
std::string config_to_json(const ExperimentConfig& config);

/// Graph named by the config: generated, or read from a DIMACS file.
Graph load_graph(const ExperimentConfig& config);

/// Schedule parameters for `g` under the config. The color count is
/// max(1, floor(Δ / k)) or the explicit count, and k is then replaced by
/// Δ / num_colors so that s_0 equals the actual palette size.
ScheduleParams resolve_params(const ExperimentConfig& config, const Graph& g);

struct TrialResult {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  bool verified = false;
  std::size_t rounds_run = 0;
  std::optional<EmptyPalette> empty_palette;
  std::size_t colors_used = 0;
  std::uint32_t completion_attempts = 0;
  std::size_t conflicts_remaining = 0;
  /// Uncolored vertices without an invariant witness, summed over rounds.
  std::size_t invariant_failures = 0;
  std::size_t cleanup_violations = 0;
  std::size_t propriety_violations = 0;
};

struct ExperimentReport {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t max_degree = 0;
  ScheduleParams params;
  std::size_t t1 = 0;
  std::vector<TrialResult> trials;
  double success_rate = 0.0;
  /// Mean over successful trials; 0 when none succeeded.
  double mean_colors_used = 0.0;
  std::vector<EstimatorReport> estimators;
  std::optional<FeasibilityReport> feasibility;
  bool checks_failed = false;
};

/// Runs every trial of `config` on `g`. Trials are independent and may run
/// concurrently; results are ordered by trial index. When `trace` is given it
/// receives the JSON-lines trace body.
ExperimentReport run_experiment(const ExperimentConfig& config, const Graph& g,
                                std::vector<std::string>* trace = nullptr);

/// Loads the graph, runs, and writes the report (and trace) to the
/// configured paths.
ExperimentReport run_experiment(const ExperimentConfig& config);

std::string report_json(const ExperimentReport& report, const ExperimentConfig& config);
/// One CSV row per trial.
std::string report_csv(const ExperimentReport& report);

/// 0 on success; 1 when no trial succeeded or an enabled check failed.
int exit_status(const ExperimentReport& report);

struct CompareRow {
  std::string family;
  std::size_t n = 0;
  std::size_t max_degree = 0;
  std::uint64_t num_colors = 0;
  std::optional<double> colors_nibble;
  std::size_t colors_greedy = 0;
  std::size_t colors_dsatur = 0;
  double success_nibble = 0.0;
  double success_greedy = 0.0;
  double success_dsatur = 0.0;
  double ms_rounds = 0.0;
  double ms_completion = 0.0;
  double ms_greedy = 0.0;
  double ms_dsatur = 0.0;
};

/// One row per graph: nibble runs under `config` against greedy and DSATUR.
/// Every coloring counted as a success is re-verified.
std::vector<CompareRow> compare_baselines(const ExperimentConfig& config, const std::vector<GraphFamilySpec>& graphs);
std::vector<CompareRow> compare_baselines(const ExperimentConfig& config);

std::string compare_csv(const std::vector<CompareRow>& rows);
std::string compare_json(const std::vector<CompareRow>& rows);

}  // namespace nibble
