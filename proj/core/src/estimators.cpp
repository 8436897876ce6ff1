#include <cmath>
#include <numeric>

#include "nibble/analysis.hpp"
#include "nibble/engine.hpp"
#include "nibble/parallel.hpp"
#include "nibble/rng.hpp"

namespace nibble {

namespace {

constexpr std::size_t kMinTrials = 30;

struct MeanAndError {
  double mean = 0.0;
  double standard_error = 0.0;
};

// Summation in index order keeps the result independent of thread timing.
MeanAndError summarize(const std::vector<double>& xs) {
  const auto n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double variance = xs.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(variance / n)};
}

std::uint32_t checked_colors(const ScheduleParams& params) {
  params.validate();
  return static_cast<std::uint32_t>(params.num_colors());
}

}  // namespace

RoundZeroCounts sample_round_zero(const Graph& g, const ScheduleParams& params, std::size_t trials,
                                  std::uint64_t seed) {
  const Schedule sched = build_schedule(params);
  const std::uint32_t colors = checked_colors(params);
  const std::size_t n = g.vertex_count();
  const ColoringState initial = init_state(g, colors);
  const ConflictDegrees degrees(g, initial);

  RoundZeroCounts out;
  out.trials = trials;
  out.vertex_count = n;
  out.num_colors = colors;
  out.mean_survivors.assign(trials, 0.0);
  out.colored_fraction.assign(trials, 0.0);

  // Fixed blocks so each block owns its integer accumulators.
  const std::size_t blocks = std::max<std::size_t>(1, std::min(default_workers(), trials));
  struct Block {
    std::vector<std::uint64_t> assigned, survived, colored;
  };
  std::vector<Block> acc(blocks);

  parallel_for(blocks, [&](std::size_t b) {
    Block& mine = acc[b];
    mine.assigned.assign(n * colors, 0);
    mine.survived.assign(n * colors, 0);
    mine.colored.assign(n, 0);
    for (std::size_t i = b; i < trials; i += blocks) {
      const std::uint64_t trial_seed = derive_key(seed, {static_cast<std::uint64_t>(Stream::trial), i});
      ColoringState state = initial;
      const TentativeAssignments tentative = phase1_assign(state, sched, trial_seed);
      const RoundOutcome outcome = phase2_resolve(g, state, tentative, degrees, sched, trial_seed);
      std::uint64_t survivors = 0;
      for (Vertex u = 0; u < n; ++u) {
        for (Color c = 0; c < colors; ++c) {
          const std::size_t k = static_cast<std::size_t>(u) * colors + c;
          mine.assigned[k] += tentative.assigned(u, c);
          const bool kept = state.in_palette(u, c);
          mine.survived[k] += kept;
          survivors += kept;
        }
      }
      for (Vertex u : outcome.newly_colored) ++mine.colored[u];
      out.mean_survivors[i] = n ? static_cast<double>(survivors) / static_cast<double>(n) : 0.0;
      out.colored_fraction[i] =
          n ? static_cast<double>(outcome.newly_colored.size()) / static_cast<double>(n) : 0.0;
    }
  });

  out.assigned.assign(n * colors, 0);
  out.survived.assign(n * colors, 0);
  out.colored.assign(n, 0);
  for (const Block& b : acc) {
    for (std::size_t k = 0; k < n * colors; ++k) {
      out.assigned[k] += b.assigned[k];
      out.survived[k] += b.survived[k];
    }
    for (std::size_t u = 0; u < n; ++u) out.colored[u] += b.colored[u];
  }
  return out;
}

std::vector<double> exact_round_zero_survival(const Graph& g, const ScheduleParams& params) {
  const Schedule sched = build_schedule(params);
  const std::uint32_t colors = checked_colors(params);
  const ColoringState initial = init_state(g, colors);
  const ConflictDegrees degrees(g, initial);
  const double desired = desired_free_probability();
  std::vector<double> out(g.vertex_count() * colors);
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (Color c = 0; c < colors; ++c) {
      out[static_cast<std::size_t>(u) * colors + c] = std::min(free_probability(sched.p[0], degrees.at(u, c)), desired);
    }
  }
  return out;
}

std::vector<double> exact_round_zero_coloring(const Graph& g, const ScheduleParams& params) {
  const Schedule sched = build_schedule(params);
  const std::uint32_t colors = checked_colors(params);
  const auto survival = exact_round_zero_survival(g, params);
  const double p = sched.p[0];
  std::vector<double> out(g.vertex_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    // Assignment of u to c and survival of c at u are independent, and the
    // events for distinct colors are independent of each other.
    double none = 1.0;
    for (Color c = 0; c < colors; ++c) none *= 1.0 - p * survival[static_cast<std::size_t>(u) * colors + c];
    out[u] = 1.0 - none;
  }
  return out;
}

EstimatorReport estimate_palette_survival(const Graph& g, const ScheduleParams& params, std::size_t trials,
                                          std::uint64_t seed, double tolerance_sigmas) {
  if (trials < kMinTrials) throw std::invalid_argument("estimate_palette_survival needs at least 30 trials");
  if (g.vertex_count() == 0) throw std::invalid_argument("estimate_palette_survival needs a nonempty graph");
  const RoundZeroCounts counts = sample_round_zero(g, params, trials, seed);
  const auto survival = exact_round_zero_survival(g, params);

  EstimatorReport r;
  r.name = "palette_survival";
  r.trials = trials;
  r.tolerance_sigmas = tolerance_sigmas;
  const MeanAndError stats = summarize(counts.mean_survivors);
  r.empirical_mean = stats.mean;
  r.standard_error = stats.standard_error;
  r.predicted = params.initial_palette() * desired_free_probability();
  r.exact = std::accumulate(survival.begin(), survival.end(), 0.0) / static_cast<double>(g.vertex_count());
  const double tol = tolerance_sigmas * stats.standard_error;
  r.window_lo = *r.exact - tol;
  r.window_hi = r.predicted + tol;
  r.pass = r.empirical_mean >= r.window_lo && r.empirical_mean <= r.window_hi;
  return r;
}

double coloring_probability_bound(const Schedule& schedule, std::size_t t) {
  const double s = schedule.s.at(t);
  const double d = schedule.d.at(t);
  return (1.0 / 16.0) * (s / d) * desired_free_probability() * (1.0 - 1.5 * schedule.e.at(t));
}

EstimatorReport estimate_coloring_probability(const Graph& g, const ScheduleParams& params, std::size_t trials,
                                              std::uint64_t seed, double slack) {
  if (trials < kMinTrials) throw std::invalid_argument("estimate_coloring_probability needs at least 30 trials");
  if (g.vertex_count() == 0) throw std::invalid_argument("estimate_coloring_probability needs a nonempty graph");
  const Schedule sched = build_schedule(params);
  if (!(sched.p[0] > 0.0) || !(sched.d[0] > 0.0)) {
    throw std::invalid_argument("estimate_coloring_probability needs d_0 > 0 and p_0 > 0");
  }
  const RoundZeroCounts counts = sample_round_zero(g, params, trials, seed);
  const auto exact = exact_round_zero_coloring(g, params);

  EstimatorReport r;
  r.name = "coloring_probability";
  r.trials = trials;
  r.tolerance_sigmas = 0.0;
  const MeanAndError stats = summarize(counts.colored_fraction);
  r.empirical_mean = stats.mean;
  r.standard_error = stats.standard_error;
  r.predicted = coloring_probability_bound(sched, 0);
  r.exact = std::accumulate(exact.begin(), exact.end(), 0.0) / static_cast<double>(g.vertex_count());
  r.window_lo = r.predicted * (1.0 - slack);
  r.window_hi = 1.0;
  r.pass = r.empirical_mean >= r.window_lo;
  return r;
}

}  // namespace nibble
