#include "nibble/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nibble/rng.hpp"

namespace nibble {

namespace {

// Below this, 1 - 2 alpha is treated as zero and cleanup removes nothing.
constexpr double kDegenerateAlphaGap = 1e-9;

void require_proper(const Graph& g, const ColoringState& state, const char* where) {
  if (!partial_coloring_is_proper(g, state)) {
    throw std::logic_error(std::string("partial coloring improper after ") + where);
  }
}

}  // namespace

double desired_free_probability() {
  static const double value = std::exp(-0.5);
  return value;
}

void TentativeAssignments::assign(Vertex u, Color c) noexcept {
  auto& bit = bits_[static_cast<std::size_t>(u) * num_colors_ + c];
  if (bit == 0) {
    bit = 1;
    ++count_;
  }
}

std::vector<Color> TentativeAssignments::assigned_to(Vertex u) const {
  std::vector<Color> out;
  for (Color c = 0; c < num_colors_; ++c) {
    if (assigned(u, c)) out.push_back(c);
  }
  return out;
}

TentativeAssignments phase1_assign(const ColoringState& state, const Schedule& schedule, std::uint64_t seed) {
  const std::size_t t = state.round();
  const double p = schedule.p.at(t);
  TentativeAssignments out(state.vertex_count(), state.num_colors());
  for (Vertex u = 0; u < state.vertex_count(); ++u) {
    if (!state.is_uncolored(u)) continue;
    for (Color c = 0; c < state.num_colors(); ++c) {
      if (state.in_palette(u, c) && keyed_uniform(seed, Stream::phase1_assign, t, u, c) < p) out.assign(u, c);
    }
  }
  return out;
}

double free_probability(double activation_p, std::uint32_t conflict_degree) {
  if (conflict_degree == 0) return 1.0;
  return std::pow(1.0 - activation_p, static_cast<double>(conflict_degree));
}

double exact_free_probability(const Graph& g, const ColoringState& state, Vertex u, Color c,
                              const Schedule& schedule) {
  if (!state.in_palette(u, c)) throw std::invalid_argument("exact_free_probability: color not in palette");
  std::uint32_t degree = 0;
  for (Vertex v : g.neighbors(u)) {
    if (state.is_uncolored(v) && state.in_palette(v, c)) ++degree;
  }
  return free_probability(schedule.p.at(state.round()), degree);
}

RoundOutcome phase2_resolve(const Graph& g, ColoringState& state, const TentativeAssignments& tentative,
                            const ConflictDegrees& degrees, const Schedule& schedule, std::uint64_t seed) {
  const std::size_t t = state.round();
  const std::size_t n = state.vertex_count();
  const std::uint32_t colors = state.num_colors();
  const double p = schedule.p.at(t);
  const double desired = desired_free_probability();

  RoundOutcome outcome;
  outcome.assigned_pairs = tentative.count();

  // II.1: (u, c) is hit when some neighbor of u was assigned c.
  std::vector<std::uint8_t> hit(n * colors, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (!state.is_uncolored(v)) continue;
    for (Color c = 0; c < colors; ++c) {
      if (!tentative.assigned(v, c)) continue;
      for (Vertex u : g.neighbors(v)) hit[static_cast<std::size_t>(u) * colors + c] = 1;
    }
  }

  std::vector<Vertex> uncolored = state.uncolored();
  for (Vertex u : uncolored) {
    for (Color c = 0; c < colors; ++c) {
      if (!state.in_palette(u, c)) continue;
      if (hit[static_cast<std::size_t>(u) * colors + c] != 0) {
        state.remove_from_palette(u, c);
        ++outcome.removed_conflict;
        continue;
      }
      // II.2: keep with probability min(1, e^{-1/2} / Pr(F_t(u, c))).
      const double free = free_probability(p, degrees.at(u, c));
      const double keep = std::min(1.0, desired / free);
      if (!(keyed_uniform(seed, Stream::phase2_equalize, t, u, c) < keep)) {
        state.remove_from_palette(u, c);
        ++outcome.removed_equalize;
      }
    }
  }

  // Smallest surviving assigned color wins. A color assigned to u removes
  // itself from every neighbor's palette, so the result stays proper.
  for (Vertex u : uncolored) {
    for (Color c = 0; c < colors; ++c) {
      if (tentative.assigned(u, c) && state.in_palette(u, c)) {
        state.color_permanently(u, c);
        outcome.newly_colored.push_back(u);
        break;
      }
    }
  }
  return outcome;
}

RoundOutcome phase2_resolve(const Graph& g, ColoringState& state, const TentativeAssignments& tentative,
                            const Schedule& schedule, std::uint64_t seed) {
  const ConflictDegrees degrees(g, state);
  return phase2_resolve(g, state, tentative, degrees, schedule, seed);
}

CleanupAudit phase3_cleanup(const Graph& g, ColoringState& state, const Schedule& schedule) {
  const std::size_t t = state.round();
  const double d_next = schedule.d.at(t + 1);
  const double s_next = schedule.s.at(t + 1);
  const ConflictDegrees degrees(g, state);

  CleanupAudit audit;
  for (Vertex u : state.uncolored()) {
    CleanupRecord rec;
    rec.vertex = u;
    rec.palette_before = state.palette_size(u);
    rec.alpha = std::clamp(1.0 - static_cast<double>(rec.palette_before) / s_next, 0.0, 0.5);
    rec.average = degrees.average(state, u);

    const double gap = 1.0 - 2.0 * rec.alpha;
    if (gap <= kDegenerateAlphaGap) {
      rec.gamma = std::numeric_limits<double>::infinity();
      rec.threshold = std::numeric_limits<double>::infinity();
    } else {
      rec.gamma = std::max(1.0, rec.average * (1.0 - rec.alpha) / (gap * d_next));
      rec.threshold = 2.0 * rec.gamma * d_next;
      for (Color c = 0; c < state.num_colors(); ++c) {
        if (state.in_palette(u, c) && static_cast<double>(degrees.at(u, c)) >= rec.threshold) {
          state.remove_from_palette(u, c);
          ++rec.removed;
        }
      }
    }
    audit.removed += rec.removed;
    audit.records.push_back(rec);
  }
  state.advance_round();
  return audit;
}

MeasuredStats measure(const ColoringState& state, const ConflictDegrees& degrees) {
  MeasuredStats m;
  double s_sum = 0.0;
  double d_sum = 0.0;
  bool first = true;
  for (Vertex u = 0; u < state.vertex_count(); ++u) {
    if (!state.is_uncolored(u)) continue;
    const auto s = state.palette_size(u);
    ++m.uncolored;
    s_sum += s;
    d_sum += degrees.average(state, u);
    m.d_max = std::max(m.d_max, degrees.maximum(state, u));
    m.s_min = first ? s : std::min(m.s_min, s);
    m.s_max = std::max(m.s_max, s);
    first = false;
  }
  if (m.uncolored > 0) {
    m.s_mean = s_sum / static_cast<double>(m.uncolored);
    m.d_mean = d_sum / static_cast<double>(m.uncolored);
  }
  return m;
}

RunResult run_rounds(const Graph& g, const ScheduleParams& params, std::uint64_t seed, const RunOptions& options) {
  if (!is_triangle_free(g)) throw NotTriangleFree();

  RunResult result;
  result.schedule = build_schedule(params);
  const Schedule& sched = result.schedule;
  const auto colors = params.num_colors();
  if (colors > std::numeric_limits<std::uint32_t>::max()) throw ScheduleError("too many colors");
  result.state = init_state(g, static_cast<std::uint32_t>(colors));
  ColoringState& state = result.state;
  const RoundObserver* obs = options.observer;

  for (std::size_t t = 0; t < sched.t1; ++t) {
    const ConflictDegrees degrees(g, state);
    RoundTrace tr;
    tr.t = t;
    tr.predicted_d = sched.d[t];
    tr.predicted_s = sched.s[t];
    tr.predicted_e = sched.e[t];
    tr.activation_p = sched.p[t];
    tr.measured = measure(state, degrees);
    if (obs && obs->on_round_start) obs->on_round_start(t, state, degrees, tr);

    std::vector<std::uint8_t> was_empty(state.vertex_count(), 0);
    for (Vertex u = 0; u < state.vertex_count(); ++u) {
      was_empty[u] = state.is_uncolored(u) && state.palette_size(u) == 0;
    }

    const TentativeAssignments tentative = phase1_assign(state, sched, seed);
    RoundOutcome outcome = phase2_resolve(g, state, tentative, degrees, sched, seed);
    if (options.check_proper_each_phase) require_proper(g, state, "phase II");
    if (obs && obs->on_after_phase2) obs->on_after_phase2(t, state, outcome);

    std::optional<ColoringState> post_phase2;
    if (obs && obs->on_after_cleanup) post_phase2 = state;
    const CleanupAudit audit = phase3_cleanup(g, state, sched);
    if (options.check_proper_each_phase) require_proper(g, state, "phase III");
    if (obs && obs->on_after_cleanup) obs->on_after_cleanup(t, *post_phase2, state, audit);

    outcome.removed_cleanup = audit.removed;
    for (Vertex u = 0; u < state.vertex_count(); ++u) {
      if (state.is_uncolored(u) && state.palette_size(u) == 0 && !was_empty[u]) {
        outcome.palette_emptied.push_back(u);
      }
    }

    tr.assigned_pairs = outcome.assigned_pairs;
    tr.removed_conflict = outcome.removed_conflict;
    tr.removed_equalize = outcome.removed_equalize;
    tr.newly_colored = outcome.newly_colored.size();
    tr.removed_cleanup = outcome.removed_cleanup;
    tr.palette_emptied = outcome.palette_emptied.size();
    result.trace.push_back(tr);
    result.rounds_run = t + 1;

    if (!outcome.palette_emptied.empty() && !result.empty_palette) {
      result.status = RunStatus::empty_palette;
      result.empty_palette = EmptyPalette{outcome.palette_emptied.front(), t};
      if (options.stop_on_empty_palette) break;
    }
  }
  return result;
}

}  // namespace nibble
