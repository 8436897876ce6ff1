#include "nibble/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

namespace nibble {

UncoloredVertex::UncoloredVertex(Vertex u)
    : std::invalid_argument("vertex " + std::to_string(u) + " is uncolored"), vertex_(u) {}

Coloring Coloring::from_colors(std::vector<Color> colors) {
  std::vector<Color> distinct;
  distinct.reserve(colors.size());
  for (Color c : colors) {
    if (c != kNoColor) distinct.push_back(c);
  }
  std::sort(distinct.begin(), distinct.end());
  const auto used = static_cast<std::size_t>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
  return Coloring{std::move(colors), used};
}

bool verify_proper(const Graph& g, const Coloring& coloring) {
  if (coloring.colors.size() != g.vertex_count()) {
    throw std::invalid_argument("coloring size does not match vertex count");
  }
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (coloring.colors[u] == kNoColor) throw UncoloredVertex(u);
  }
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (v > u && coloring.colors[u] == coloring.colors[v]) return false;
    }
  }
  return true;
}

std::vector<Vertex> natural_order(std::size_t n) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  return order;
}

Coloring greedy_color(const Graph& g, std::span<const Vertex> order) {
  const std::size_t n = g.vertex_count();
  if (order.size() != n) throw std::invalid_argument("order must list every vertex once");
  std::vector<std::uint8_t> seen(n, 0);
  for (Vertex u : order) {
    if (u >= n || seen[u]) throw std::invalid_argument("order must be a permutation");
    seen[u] = 1;
  }

  std::vector<Color> colors(n, kNoColor);
  std::vector<std::size_t> used_by(g.max_degree() + 2, static_cast<std::size_t>(-1));
  for (Vertex u : order) {
    for (Vertex v : g.neighbors(u)) {
      if (colors[v] != kNoColor) used_by[colors[v]] = u;
    }
    Color c = 0;
    while (used_by[c] == u) ++c;
    colors[u] = c;
  }
  return Coloring::from_colors(std::move(colors));
}

Coloring dsatur_color(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const std::size_t palette = g.max_degree() + 2;
  std::vector<Color> colors(n, kNoColor);
  // neighbor_color_count[u][c]: colored neighbors of u holding c.
  std::vector<std::uint32_t> neighbor_color_count(n * palette, 0);
  std::vector<std::size_t> saturation(n, 0);

  // Ordered by (-saturation, -degree, index): begin() is the next vertex.
  using Key = std::tuple<long long, long long, Vertex>;
  auto key = [&](Vertex u) {
    return Key{-static_cast<long long>(saturation[u]), -static_cast<long long>(g.degree(u)), u};
  };
  std::set<Key> queue;
  for (Vertex u = 0; u < n; ++u) queue.insert(key(u));

  while (!queue.empty()) {
    const Vertex u = std::get<2>(*queue.begin());
    queue.erase(queue.begin());

    Color c = 0;
    while (neighbor_color_count[u * palette + c] != 0) ++c;
    colors[u] = c;

    for (Vertex v : g.neighbors(u)) {
      if (colors[v] != kNoColor) continue;
      auto& count = neighbor_color_count[v * palette + c];
      if (count++ == 0) {
        queue.erase(key(v));
        ++saturation[v];
        queue.insert(key(v));
      }
    }
  }
  return Coloring::from_colors(std::move(colors));
}

}  // namespace nibble
