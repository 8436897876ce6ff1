#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nibble/graph.hpp"
#include "nibble/schedule.hpp"
#include "nibble/state.hpp"

namespace nibble {

class NotTriangleFree : public std::invalid_argument {
 public:
  NotTriangleFree() : std::invalid_argument("input graph contains a triangle") {}
};

/// Target per-round survival probability of a palette color, e^{-1/2}.
double desired_free_probability();

/// Phase I output: the (u, c) pairs tentatively assigned this round.
class TentativeAssignments {
 public:
  TentativeAssignments() = default;
  TentativeAssignments(std::size_t vertex_count, std::uint32_t num_colors)
      : num_colors_(num_colors), bits_(vertex_count * num_colors, 0) {}

  bool assigned(Vertex u, Color c) const noexcept { return bits_[static_cast<std::size_t>(u) * num_colors_ + c] != 0; }
  void assign(Vertex u, Color c) noexcept;
  std::size_t count() const noexcept { return count_; }
  std::uint32_t num_colors() const noexcept { return num_colors_; }
  std::vector<Color> assigned_to(Vertex u) const;

  friend bool operator==(const TentativeAssignments&, const TentativeAssignments&) = default;

 private:
  std::uint32_t num_colors_ = 0;
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

/// Each uncolored u and each c in S_t(u) is assigned independently with
/// probability p_t, using keyed draws on (seed, t, u, c).
TentativeAssignments phase1_assign(const ColoringState& state, const Schedule& schedule, std::uint64_t seed);

/// (1 - p)^d.
double free_probability(double activation_p, std::uint32_t conflict_degree);

/// Pr(F_t(u, c)) from the beginning-of-round state. Requires c in S_t(u).
double exact_free_probability(const Graph& g, const ColoringState& state, Vertex u, Color c,
                              const Schedule& schedule);

struct RoundOutcome {
  std::size_t assigned_pairs = 0;
  std::size_t removed_conflict = 0;
  std::size_t removed_equalize = 0;
  std::vector<Vertex> newly_colored;
  std::size_t removed_cleanup = 0;
  std::vector<Vertex> palette_emptied;
};

/// Phase II on the state in place. `degrees` must be the beginning-of-round
/// conflict degrees of `state`.
RoundOutcome phase2_resolve(const Graph& g, ColoringState& state, const TentativeAssignments& tentative,
                            const ConflictDegrees& degrees, const Schedule& schedule, std::uint64_t seed);

RoundOutcome phase2_resolve(const Graph& g, ColoringState& state, const TentativeAssignments& tentative,
                            const Schedule& schedule, std::uint64_t seed);

/// Cleanup decision for one vertex.
struct CleanupRecord {
  Vertex vertex = 0;
  std::uint32_t palette_before = 0;
  std::uint32_t removed = 0;
  double alpha = 0.0;
  double gamma = 1.0;
  /// 2 gamma d_{t+1}; +inf when alpha reaches the degenerate value 1/2.
  double threshold = 0.0;
  /// Mean of d_{t+1}(u, c) over the post-Phase-II palette.
  double average = 0.0;
};

struct CleanupAudit {
  std::size_t removed = 0;
  std::vector<CleanupRecord> records;
};

/// Phase III for round state.round(): computes d_{t+1}(u, c) on the
/// post-Phase-II state, removes every color at or above 2 gamma d_{t+1} and
/// advances the round counter.
CleanupAudit phase3_cleanup(const Graph& g, ColoringState& state, const Schedule& schedule);

/// Measured statistics at the start of a round (over uncolored vertices).
struct MeasuredStats {
  std::size_t uncolored = 0;
  std::uint32_t s_min = 0;
  std::uint32_t s_max = 0;
  double s_mean = 0.0;
  double d_mean = 0.0;
  std::uint32_t d_max = 0;

  friend bool operator==(const MeasuredStats&, const MeasuredStats&) = default;
};

MeasuredStats measure(const ColoringState& state, const ConflictDegrees& degrees);

struct RoundTrace {
  std::size_t t = 0;
  double predicted_d = 0.0;
  double predicted_s = 0.0;
  double predicted_e = 0.0;
  double activation_p = 0.0;
  MeasuredStats measured;
  std::size_t assigned_pairs = 0;
  std::size_t removed_conflict = 0;
  std::size_t removed_equalize = 0;
  std::size_t newly_colored = 0;
  std::size_t removed_cleanup = 0;
  std::size_t palette_emptied = 0;
  /// Filled by observers that run the invariant checker; -1 when unchecked.
  long invariant_failures = -1;

  friend bool operator==(const RoundTrace&, const RoundTrace&) = default;
};

/// Hooks invoked during run_rounds. Any may be empty.
struct RoundObserver {
  std::function<void(std::size_t t, const ColoringState&, const ConflictDegrees&, RoundTrace&)> on_round_start;
  std::function<void(std::size_t t, const ColoringState&, const RoundOutcome&)> on_after_phase2;
  std::function<void(std::size_t t, const ColoringState& post_phase2, const ColoringState& post_cleanup,
                     const CleanupAudit&)>
      on_after_cleanup;
};

struct RunOptions {
  /// Stop at the end of the first round that leaves an uncolored vertex with
  /// an empty palette.
  bool stop_on_empty_palette = true;
  /// Verify the partial coloring after every phase; throws std::logic_error.
  bool check_proper_each_phase = false;
  const RoundObserver* observer = nullptr;
};

enum class RunStatus { completed, empty_palette };

struct EmptyPalette {
  Vertex vertex = 0;
  std::size_t round = 0;
};

struct RunResult {
  Schedule schedule;
  ColoringState state;
  std::vector<RoundTrace> trace;
  RunStatus status = RunStatus::completed;
  std::optional<EmptyPalette> empty_palette;
  std::size_t rounds_run = 0;
};

/// Runs the repeat block for t1 rounds. Throws NotTriangleFree.
RunResult run_rounds(const Graph& g, const ScheduleParams& params, std::uint64_t seed, const RunOptions& options = {});

}  // namespace nibble
