#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "nibble/graph.hpp"
#include "nibble/state.hpp"

namespace nibble {

class UncoloredVertex : public std::invalid_argument {
 public:
  explicit UncoloredVertex(Vertex u);
  Vertex vertex() const noexcept { return vertex_; }

 private:
  Vertex vertex_;
};

struct Coloring {
  std::vector<Color> colors;
  std::size_t num_colors_used = 0;

  /// Counts distinct colors, ignoring kNoColor entries.
  static Coloring from_colors(std::vector<Color> colors);

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// True iff no edge is monochromatic. Throws UncoloredVertex.
bool verify_proper(const Graph& g, const Coloring& coloring);

std::vector<Vertex> natural_order(std::size_t n);

/// First-fit in the given order; uses at most max_degree + 1 colors.
/// Throws std::invalid_argument if `order` is not a permutation.
Coloring greedy_color(const Graph& g, std::span<const Vertex> order);

/// DSATUR: highest saturation, then highest degree, then lowest index.
Coloring dsatur_color(const Graph& g);

}  // namespace nibble
