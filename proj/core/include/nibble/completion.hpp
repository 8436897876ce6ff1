#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "nibble/baselines.hpp"
#include "nibble/graph.hpp"
#include "nibble/state.hpp"

namespace nibble {

enum class CompletionStrategy { single_shot, retry, local_resample, greedy_fallback };

std::string_view to_string(CompletionStrategy strategy);
CompletionStrategy parse_completion_strategy(std::string_view name);

struct CompletionPolicy {
  CompletionStrategy strategy = CompletionStrategy::single_shot;
  std::uint32_t max_attempts = 1;
  std::uint32_t resample_rounds = 1;

  void validate() const;
};

struct CompletionFailure {
  std::size_t conflicts_remaining = 0;
};

struct CompletionResult {
  std::optional<Coloring> coloring;
  CompletionFailure failure;
  std::uint32_t attempts_used = 0;
  std::size_t redraws = 0;
  std::size_t fallback_recolored = 0;

  bool success() const noexcept { return coloring.has_value(); }
};

/// Colors every vertex left uncolored by the repeat block.
///
/// A shot gives each uncolored vertex a uniform color from its palette.
///   single_shot     one shot.
///   retry           up to max_attempts shots; the first proper one wins.
///   local_resample  per attempt, a shot followed by up to
///                   resample_rounds * n redraws of the lowest-indexed
///                   conflicted vertex.
///   greedy_fallback up to max_attempts shots, then every vertex still in a
///                   conflict (or with an empty palette) takes, in index
///                   order, the smallest color in [0, num_colors) unused by its
///                   neighbors. Fails only when no such color exists.
///
/// A vertex with an empty palette makes every shot fail. Any returned
/// coloring passes verify_proper.
CompletionResult complete_coloring(const Graph& g, const ColoringState& state, const CompletionPolicy& policy,
                                   std::uint64_t seed);

}  // namespace nibble
