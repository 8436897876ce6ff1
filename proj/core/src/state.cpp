#include "nibble/state.hpp"

#include <algorithm>
#include <stdexcept>

namespace nibble {

ColoringState::ColoringState(std::size_t vertex_count, std::uint32_t num_colors)
    : num_colors_(num_colors),
      bits_(vertex_count * num_colors, 1),
      palette_size_(vertex_count, num_colors),
      color_(vertex_count, kNoColor),
      uncolored_count_(vertex_count) {}

std::vector<Color> ColoringState::palette(Vertex u) const {
  std::vector<Color> out;
  out.reserve(palette_size_[u]);
  for (Color c = 0; c < num_colors_; ++c) {
    if (in_palette(u, c)) out.push_back(c);
  }
  return out;
}

void ColoringState::remove_from_palette(Vertex u, Color c) noexcept {
  auto& bit = bits_[index(u, c)];
  if (bit != 0) {
    bit = 0;
    --palette_size_[u];
  }
}

void ColoringState::set_palette(Vertex u, std::span<const Color> colors) {
  std::fill_n(bits_.begin() + static_cast<std::ptrdiff_t>(index(u, 0)), num_colors_, std::uint8_t{0});
  palette_size_[u] = 0;
  for (Color c : colors) {
    if (c >= num_colors_) throw std::out_of_range("palette color out of range");
    if (bits_[index(u, c)] == 0) {
      bits_[index(u, c)] = 1;
      ++palette_size_[u];
    }
  }
}

std::optional<Color> ColoringState::permanent_color(Vertex u) const noexcept {
  if (color_[u] == kNoColor) return std::nullopt;
  return color_[u];
}

void ColoringState::color_permanently(Vertex u, Color c) noexcept {
  if (color_[u] == kNoColor) --uncolored_count_;
  color_[u] = c;
}

std::vector<Vertex> ColoringState::uncolored() const {
  std::vector<Vertex> out;
  out.reserve(uncolored_count_);
  for (Vertex u = 0; u < color_.size(); ++u) {
    if (color_[u] == kNoColor) out.push_back(u);
  }
  return out;
}

ColoringState init_state(const Graph& g, std::uint32_t num_colors) {
  if (num_colors < 1) throw std::invalid_argument("init_state requires at least one color");
  return ColoringState(g.vertex_count(), num_colors);
}

ConflictDegrees::ConflictDegrees(const Graph& g, const ColoringState& state)
    : num_colors_(state.num_colors()), counts_(g.vertex_count() * state.num_colors(), 0) {
  const std::size_t n = g.vertex_count();
  // Flattened palettes of uncolored vertices so each neighbor scan is O(|S(v)|).
  std::vector<std::size_t> offsets(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) {
    offsets[v + 1] = offsets[v] + (state.is_uncolored(v) ? state.palette_size(v) : 0);
  }
  std::vector<Color> flat(offsets[n]);
  for (Vertex v = 0; v < n; ++v) {
    if (!state.is_uncolored(v)) continue;
    std::size_t k = offsets[v];
    for (Color c = 0; c < num_colors_; ++c) {
      if (state.in_palette(v, c)) flat[k++] = c;
    }
  }

  for (Vertex u = 0; u < n; ++u) {
    if (!state.is_uncolored(u)) continue;
    std::uint32_t* row = counts_.data() + static_cast<std::size_t>(u) * num_colors_;
    for (Vertex v : g.neighbors(u)) {
      for (std::size_t k = offsets[v]; k < offsets[v + 1]; ++k) ++row[flat[k]];
    }
  }
}

double ConflictDegrees::average(const ColoringState& state, Vertex u) const {
  const auto size = state.palette_size(u);
  if (size == 0) return 0.0;
  std::uint64_t sum = 0;
  for (Color c = 0; c < num_colors_; ++c) {
    if (state.in_palette(u, c)) sum += at(u, c);
  }
  return static_cast<double>(sum) / static_cast<double>(size);
}

std::uint32_t ConflictDegrees::maximum(const ColoringState& state, Vertex u) const {
  std::uint32_t best = 0;
  for (Color c = 0; c < num_colors_; ++c) {
    if (state.in_palette(u, c)) best = std::max(best, at(u, c));
  }
  return best;
}

bool partial_coloring_is_proper(const Graph& g, const ColoringState& state) {
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const auto cu = state.permanent_color(u);
    if (!cu) continue;
    for (Vertex v : g.neighbors(u)) {
      if (v > u && state.permanent_color(v) == cu) return false;
    }
  }
  return true;
}

}  // namespace nibble
