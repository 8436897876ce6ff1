#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "nibble/graph.hpp"

namespace nibble {

using Color = std::uint32_t;
inline constexpr Color kNoColor = std::numeric_limits<Color>::max();

/// Palettes S_t(u), permanent colors and the uncolored set V(G_t).
///
/// Palettes are a dense vertex-by-color bitmap; every mutation keeps the
/// cached palette sizes and the uncolored count in sync.
class ColoringState {
 public:
  ColoringState() = default;
  ColoringState(std::size_t vertex_count, std::uint32_t num_colors);

  std::size_t vertex_count() const noexcept { return color_.size(); }
  std::uint32_t num_colors() const noexcept { return num_colors_; }
  std::size_t round() const noexcept { return round_; }
  void advance_round() noexcept { ++round_; }

  bool in_palette(Vertex u, Color c) const noexcept { return bits_[index(u, c)] != 0; }
  std::uint32_t palette_size(Vertex u) const noexcept { return palette_size_[u]; }
  std::vector<Color> palette(Vertex u) const;
  void remove_from_palette(Vertex u, Color c) noexcept;
  /// Replaces the palette of u with the given colors (all < num_colors).
  void set_palette(Vertex u, std::span<const Color> colors);

  bool is_uncolored(Vertex u) const noexcept { return color_[u] == kNoColor; }
  std::optional<Color> permanent_color(Vertex u) const noexcept;
  void color_permanently(Vertex u, Color c) noexcept;
  std::size_t uncolored_count() const noexcept { return uncolored_count_; }
  /// Uncolored vertices in ascending order.
  std::vector<Vertex> uncolored() const;

  std::span<const Color> colors() const noexcept { return color_; }

  friend bool operator==(const ColoringState&, const ColoringState&) = default;

 private:
  std::size_t index(Vertex u, Color c) const noexcept { return static_cast<std::size_t>(u) * num_colors_ + c; }

  std::uint32_t num_colors_ = 0;
  std::size_t round_ = 0;
  std::vector<std::uint8_t> bits_;
  std::vector<std::uint32_t> palette_size_;
  std::vector<Color> color_;
  std::size_t uncolored_count_ = 0;
};

/// All vertices uncolored with the full palette {0, ..., num_colors - 1}.
ColoringState init_state(const Graph& g, std::uint32_t num_colors);

/// d_t(u, c): number of uncolored neighbors of u whose palette holds c.
///
/// Rows of colored vertices are left at zero.
class ConflictDegrees {
 public:
  ConflictDegrees() = default;
  ConflictDegrees(const Graph& g, const ColoringState& state);

  std::uint32_t at(Vertex u, Color c) const noexcept { return counts_[static_cast<std::size_t>(u) * num_colors_ + c]; }

  /// d_t(u): mean of d_t(u, c) over the palette of u; 0 for an empty palette.
  double average(const ColoringState& state, Vertex u) const;
  /// max over the palette of u of d_t(u, c); 0 for an empty palette.
  std::uint32_t maximum(const ColoringState& state, Vertex u) const;

 private:
  std::uint32_t num_colors_ = 0;
  std::vector<std::uint32_t> counts_;
};

/// True if no edge joins two permanently colored vertices of the same color.
bool partial_coloring_is_proper(const Graph& g, const ColoringState& state);

}  // namespace nibble
