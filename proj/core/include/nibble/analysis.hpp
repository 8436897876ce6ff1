#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nibble/graph.hpp"
#include "nibble/schedule.hpp"
#include "nibble/state.hpp"

namespace nibble {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Per-vertex invariant of the repeat block.
//
// A vertex u satisfies the invariant at round t when some alpha in [0, 1/2]
// makes all three hold:
//   s_t(u)      >= (1 - alpha) s_t (1 - e_t)
//   d_t(u)      <= (1 - 2 alpha) / (1 - alpha) * d_t (1 + e_t)
//   d_t(u, c)   <= 2 d_t (1 + e_t)      for every c in S_t(u)
// The first is a lower bound on alpha, the second an upper bound (the factor
// is decreasing on [0, 1/2]), and the third does not involve alpha.
// ---------------------------------------------------------------------------

struct VertexMeasurement {
  double palette_size = 0.0;     // s_t(u)
  double average_degree = 0.0;   // d_t(u)
  double max_degree = 0.0;       // max_c d_t(u, c)
};

struct RoundTargets {
  double s = 0.0;  // s_t
  double d = 0.0;  // d_t
  double e = 0.0;  // e_t
};

struct InvariantBounds {
  double palette_floor = 0.0;  // (1 - alpha) s_t (1 - e_t)
  double average_cap = 0.0;    // (1 - 2 alpha) / (1 - alpha) d_t (1 + e_t)
  double max_cap = 0.0;        // 2 d_t (1 + e_t)
};

struct AlphaInterval {
  double lo = 0.0;
  double hi = 0.5;
  bool empty() const noexcept { return lo > hi; }
};

/// Admissible alpha values for the first two inequalities, within [0, 1/2].
AlphaInterval admissible_alpha(const VertexMeasurement& m, const RoundTargets& targets);

/// Evaluates the three inequalities at a fixed alpha.
bool invariant_holds_at(const VertexMeasurement& m, const RoundTargets& targets, double alpha);

InvariantBounds bounds_at(const RoundTargets& targets, double alpha);

struct InvariantWitness {
  Vertex vertex = 0;
  /// Smallest alpha satisfying all three inequalities, if any.
  std::optional<double> alpha;
  bool palette_ok = false;
  bool avg_ok = false;
  bool max_ok = false;
  VertexMeasurement measured;
  /// Evaluated at alpha when it exists, otherwise at the lower end of the
  /// palette interval clamped into [0, 1/2].
  InvariantBounds bounds;

  bool ok() const noexcept { return alpha.has_value() && palette_ok && avg_ok && max_ok; }
};

InvariantWitness witness_for(Vertex u, const VertexMeasurement& m, const RoundTargets& targets);

/// One witness per uncolored vertex of `state`, measured against round t of
/// the schedule.
std::vector<InvariantWitness> check_assumption(const Graph& g, const ColoringState& state, const Schedule& schedule,
                                               std::size_t t);

std::size_t count_failures(const std::vector<InvariantWitness>& witnesses);

// ---------------------------------------------------------------------------
// Averaging identities.
// ---------------------------------------------------------------------------

/// Upper bound mu (1 - q alpha) / (1 - alpha) on the average left after
/// removing a fraction alpha of points, each at least q mu.
/// Requires 0 <= alpha < 1 and q > 1; throws DomainError if alpha > 1/q.
double removal_average_bound(double mu, double alpha, double q);

/// Average mu (1 + q alpha) / (1 + alpha) after adding alpha n points of
/// value q mu. Requires alpha >= 0 and q >= 0.
double addition_average(double mu, double alpha, double q);

/// e' = -a e / (1 - a), so that (1 - a)(1 + e') = 1 - a (1 + e).
/// Requires 0 < a < 1; throws DomainError otherwise.
double error_compose(double a, double e);

// ---------------------------------------------------------------------------
// Monte Carlo estimators over round 0.
// ---------------------------------------------------------------------------

struct EstimatorReport {
  std::string name;
  std::size_t trials = 0;
  double empirical_mean = 0.0;
  double standard_error = 0.0;
  /// Value predicted by the schedule (s_0 e^{-1/2}, or the coloring bound).
  double predicted = 0.0;
  /// Exact expectation for round 0 computed from the graph, when available.
  std::optional<double> exact;
  double tolerance_sigmas = 3.0;
  /// Acceptance window on empirical_mean.
  double window_lo = 0.0;
  double window_hi = 0.0;
  bool pass = false;
};

/// Raw round-0 counts over independent trials.
struct RoundZeroCounts {
  std::size_t trials = 0;
  std::size_t vertex_count = 0;
  std::uint32_t num_colors = 0;
  /// [u * num_colors + c]: trials in which c was assigned to u in Phase I.
  std::vector<std::uint64_t> assigned;
  /// [u * num_colors + c]: trials in which c survived Phase II at u.
  std::vector<std::uint64_t> survived;
  /// [u]: trials in which u was colored.
  std::vector<std::uint64_t> colored;
  /// Per-trial mean surviving palette size over all vertices.
  std::vector<double> mean_survivors;
  /// Per-trial fraction of vertices colored.
  std::vector<double> colored_fraction;
};

/// Trial i uses seed derive_key(seed, {trial, i}); trials run concurrently
/// and counts are combined in trial order.
RoundZeroCounts sample_round_zero(const Graph& g, const ScheduleParams& params, std::size_t trials,
                                  std::uint64_t seed);

/// Per-(u, c) probability that c survives Phase II of round 0:
/// min(Pr(F_0(u, c)), e^{-1/2}).
std::vector<double> exact_round_zero_survival(const Graph& g, const ScheduleParams& params);

/// Per-vertex probability of being colored in round 0:
/// 1 - prod_c (1 - p_0 * survival(u, c)).
std::vector<double> exact_round_zero_coloring(const Graph& g, const ScheduleParams& params);

/// Mean surviving palette size after round 0 against s_0 e^{-1/2}. The
/// window is [exact - tol, predicted + tol] with tol = sigmas * standard error;
/// exact equals predicted whenever every Pr(F_0(u, c)) >= e^{-1/2}.
/// Throws std::invalid_argument when trials < 30.
EstimatorReport estimate_palette_survival(const Graph& g, const ScheduleParams& params, std::size_t trials,
                                          std::uint64_t seed, double tolerance_sigmas = 3.0);

/// Fraction of vertices colored in round 0 against the one-sided bound
/// (1/16)(s_0/d_0)e^{-1/2}; passes iff empirical >= bound (1 - slack).
/// Throws std::invalid_argument when trials < 30 or p_0 is not positive.
EstimatorReport estimate_coloring_probability(const Graph& g, const ScheduleParams& params, std::size_t trials,
                                              std::uint64_t seed, double slack = 0.05);

/// (1/16)(s_t/d_t)e^{-1/2}(1 - 3/2 e_t), the round-t coloring lower bound
/// without its O(1/d_t) term.
double coloring_probability_bound(const Schedule& schedule, std::size_t t);

}  // namespace nibble
