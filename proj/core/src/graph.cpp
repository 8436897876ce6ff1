#include "nibble/graph.hpp"

#include <algorithm>

namespace nibble {

DuplicateEdge::DuplicateEdge(Vertex u, Vertex v)
    : GraphError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")") {}

SelfLoop::SelfLoop(Vertex u) : GraphError("self-loop at vertex " + std::to_string(u)) {}

IndexOutOfRange::IndexOutOfRange(Vertex u, std::size_t vertex_count)
    : GraphError("vertex " + std::to_string(u) + " out of range for " + std::to_string(vertex_count) +
                 " vertices") {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(vertex_count, 0);
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count) throw IndexOutOfRange(u, vertex_count);
    if (v >= vertex_count) throw IndexOutOfRange(v, vertex_count);
    if (u == v) throw SelfLoop(u);
    ++degree[u];
    ++degree[v];
  }

  Graph g;
  g.offsets_.assign(vertex_count + 1, 0);
  for (std::size_t u = 0; u < vertex_count; ++u) g.offsets_[u + 1] = g.offsets_[u] + degree[u];
  g.targets_.resize(g.offsets_[vertex_count]);

  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.targets_[cursor[u]++] = v;
    g.targets_[cursor[v]++] = u;
  }
  for (std::size_t u = 0; u < vertex_count; ++u) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw DuplicateEdge(static_cast<Vertex>(u), *dup);
    }
    g.max_degree_ = std::max(g.max_degree_, degree[u]);
  }
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const noexcept {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph build_graph(std::span<const Edge> edges, std::size_t vertex_count) {
  return Graph::from_edges(vertex_count, edges);
}

bool is_triangle_free(const Graph& g) {
  // A triangle exists iff some edge (u, v) has a common neighbor.
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    auto nu = g.neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;
      auto nv = g.neighbors(v);
      auto a = nu.begin();
      auto b = nv.begin();
      while (a != nu.end() && b != nv.end()) {
        if (*a == *b) return false;
        if (*a < *b) {
          ++a;
        } else {
          ++b;
        }
      }
    }
  }
  return true;
}

}  // namespace nibble
