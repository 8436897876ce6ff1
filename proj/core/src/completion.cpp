#include "nibble/completion.hpp"

#include <array>
#include <set>
#include <stdexcept>
#include <string>

#include "nibble/rng.hpp"

namespace nibble {

namespace {

constexpr std::array<std::pair<CompletionStrategy, std::string_view>, 4> kStrategyNames{{
    {CompletionStrategy::single_shot, "single_shot"},
    {CompletionStrategy::retry, "retry"},
    {CompletionStrategy::local_resample, "local_resample"},
    {CompletionStrategy::greedy_fallback, "greedy_fallback"},
}};

class Completer {
 public:
  Completer(const Graph& g, const ColoringState& state) : g_(g), state_(state), free_(state.uncolored()) {
    palettes_.reserve(free_.size());
    for (Vertex u : free_) palettes_.push_back(state.palette(u));
  }

  bool nothing_to_do() const { return free_.empty(); }

  bool any_empty_palette() const {
    for (const auto& pal : palettes_) {
      if (pal.empty()) return true;
    }
    return false;
  }

  void shot(Xoshiro256& rng) {
    colors_.assign(state_.colors().begin(), state_.colors().end());
    for (std::size_t i = 0; i < free_.size(); ++i) {
      const auto& pal = palettes_[i];
      colors_[free_[i]] = pal.empty() ? kNoColor : pal[rng.below(pal.size())];
    }
  }

  bool in_conflict(Vertex u) const {
    if (colors_[u] == kNoColor) return true;
    for (Vertex v : g_.neighbors(u)) {
      if (colors_[v] == colors_[u]) return true;
    }
    return false;
  }

  /// Monochromatic edges touching a free vertex plus free vertices without a color.
  std::size_t conflicts() const {
    std::size_t count = 0;
    std::vector<std::uint8_t> is_free(g_.vertex_count(), 0);
    for (Vertex u : free_) is_free[u] = 1;
    for (Vertex u : free_) {
      if (colors_[u] == kNoColor) {
        ++count;
        continue;
      }
      for (Vertex v : g_.neighbors(u)) {
        // Count free-free edges once, from the smaller endpoint.
        if (colors_[v] == colors_[u] && (!is_free[v] || u < v)) ++count;
      }
    }
    return count;
  }

  /// Moser-Tardos style repair: redraw the lowest conflicted free vertex.
  std::size_t resample(Xoshiro256& rng, std::size_t budget) {
    const std::size_t n = g_.vertex_count();
    std::vector<std::int64_t> slot(n, -1);
    for (std::size_t i = 0; i < free_.size(); ++i) slot[free_[i]] = static_cast<std::int64_t>(i);

    std::vector<std::uint32_t> same(n, 0);
    std::set<Vertex> conflicted;
    for (Vertex u : free_) {
      for (Vertex v : g_.neighbors(u)) {
        if (colors_[v] == colors_[u]) ++same[u];
      }
      if (same[u] > 0) conflicted.insert(u);
    }

    std::size_t redraws = 0;
    while (!conflicted.empty() && redraws < budget) {
      const Vertex u = *conflicted.begin();
      const auto& pal = palettes_[static_cast<std::size_t>(slot[u])];
      const Color old_color = colors_[u];
      const Color new_color = pal[rng.below(pal.size())];
      ++redraws;
      if (new_color == old_color) continue;
      colors_[u] = new_color;
      for (Vertex v : g_.neighbors(u)) {
        const bool v_free = slot[v] >= 0;
        if (colors_[v] == old_color) {
          --same[u];
          if (v_free && --same[v] == 0) conflicted.erase(v);
        } else if (colors_[v] == new_color) {
          ++same[u];
          if (v_free && same[v]++ == 0) conflicted.insert(v);
        }
      }
      if (same[u] == 0) conflicted.erase(u);
    }
    return redraws;
  }

  /// Smallest-free-color repair over the full color range, in index order.
  std::size_t greedy_repair() {
    const std::uint32_t range = state_.num_colors();
    std::vector<std::size_t> used_by(range, static_cast<std::size_t>(-1));
    std::size_t recolored = 0;
    for (Vertex u : free_) {
      if (!in_conflict(u)) continue;
      for (Vertex v : g_.neighbors(u)) {
        if (colors_[v] != kNoColor && colors_[v] < range) used_by[colors_[v]] = u;
      }
      Color c = 0;
      while (c < range && used_by[c] == u) ++c;
      colors_[u] = c < range ? c : kNoColor;
      ++recolored;
    }
    return recolored;
  }

  bool proper() const {
    for (Vertex u : free_) {
      if (in_conflict(u)) return false;
    }
    return true;
  }

  Coloring coloring() const { return Coloring::from_colors(colors_); }
  Coloring current_state_coloring() const {
    return Coloring::from_colors(std::vector<Color>(state_.colors().begin(), state_.colors().end()));
  }

 private:
  const Graph& g_;
  const ColoringState& state_;
  std::vector<Vertex> free_;
  std::vector<std::vector<Color>> palettes_;
  std::vector<Color> colors_;
};

}  // namespace

std::string_view to_string(CompletionStrategy strategy) {
  for (const auto& [s, name] : kStrategyNames) {
    if (s == strategy) return name;
  }
  return "unknown";
}

CompletionStrategy parse_completion_strategy(std::string_view name) {
  for (const auto& [s, n] : kStrategyNames) {
    if (n == name) return s;
  }
  throw std::invalid_argument("unknown completion policy '" + std::string(name) + "'");
}

void CompletionPolicy::validate() const {
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be at least 1");
  if (strategy == CompletionStrategy::local_resample && resample_rounds < 1) {
    throw std::invalid_argument("resample_rounds must be at least 1");
  }
}

CompletionResult complete_coloring(const Graph& g, const ColoringState& state, const CompletionPolicy& policy,
                                   std::uint64_t seed) {
  policy.validate();
  if (!partial_coloring_is_proper(g, state)) throw std::invalid_argument("partial coloring is not proper");

  Completer work(g, state);
  CompletionResult result;
  if (work.nothing_to_do()) {
    result.coloring = work.current_state_coloring();
    return result;
  }

  const std::uint32_t attempts = policy.strategy == CompletionStrategy::single_shot ? 1 : policy.max_attempts;
  const bool unfillable = work.any_empty_palette();
  for (std::uint32_t attempt = 0; attempt < attempts; ++attempt) {
    auto rng = make_stream(seed, Stream::completion, attempt);
    result.attempts_used = attempt + 1;
    work.shot(rng);
    if (policy.strategy == CompletionStrategy::local_resample && !unfillable) {
      result.redraws += work.resample(rng, static_cast<std::size_t>(policy.resample_rounds) * g.vertex_count());
    }
    if (work.proper()) {
      result.coloring = work.coloring();
      return result;
    }
    // Nothing random can fix an empty palette.
    if (unfillable) break;
  }

  if (policy.strategy == CompletionStrategy::greedy_fallback) {
    result.fallback_recolored = work.greedy_repair();
    if (work.proper()) {
      result.coloring = work.coloring();
      return result;
    }
  }
  result.failure.conflicts_remaining = work.conflicts();
  return result;
}

}  // namespace nibble
