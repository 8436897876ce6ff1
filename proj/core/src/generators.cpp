#include <algorithm>
#include <array>
#include <cmath>

#include "nibble/graph.hpp"
#include "nibble/rng.hpp"

namespace nibble {

namespace {

constexpr std::array<std::pair<GraphFamily, std::string_view>, 5> kFamilyNames{{
    {GraphFamily::cycle, "cycle"},
    {GraphFamily::complete_bipartite, "complete_bipartite"},
    {GraphFamily::random_bipartite, "random_bipartite"},
    {GraphFamily::random_triangle_free, "random_triangle_free"},
    {GraphFamily::regular_high_girth_attempt, "regular_high_girth_attempt"},
}};

Graph make_cycle(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  }
  return Graph::from_edges(n, edges);
}

Graph make_complete_bipartite(std::size_t side) {
  std::vector<Edge> edges;
  edges.reserve(side * side);
  for (std::size_t u = 0; u < side; ++u) {
    for (std::size_t v = 0; v < side; ++v) {
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(side + v));
    }
  }
  return Graph::from_edges(2 * side, edges);
}

Graph make_random_bipartite(std::size_t n, double p, Xoshiro256& rng) {
  const std::size_t left = n / 2;
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < left; ++u) {
    for (std::size_t v = left; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  }
  return Graph::from_edges(n, edges);
}

// Pairs are sampled in (u, v) lexicographic order, which is also the repair
// scan order, so sampling and keep-first repair can share one pass.
Graph make_random_triangle_free(std::size_t n, double p, Xoshiro256& rng) {
  std::vector<std::vector<Vertex>> kept(n);
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t stamp = 0;
  std::vector<Edge> edges;

  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!rng.bernoulli(p)) continue;
      ++stamp;
      for (Vertex w : kept[u]) mark[w] = stamp;
      const bool closes_triangle =
          std::any_of(kept[v].begin(), kept[v].end(), [&](Vertex w) { return mark[w] == stamp; });
      if (closes_triangle) continue;
      kept[u].push_back(static_cast<Vertex>(v));
      kept[v].push_back(static_cast<Vertex>(u));
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  }
  return Graph::from_edges(n, edges);
}

// True if u and v are within distance 3 in the current adjacency.
bool within_distance_three(const std::vector<std::vector<Vertex>>& adj, Vertex u, Vertex v) {
  for (Vertex a : adj[u]) {
    if (a == v) return true;
    for (Vertex b : adj[a]) {
      if (b == v) return true;
      for (Vertex c : adj[b]) {
        if (c == v) return true;
      }
    }
  }
  return false;
}

Graph make_high_girth_attempt(std::size_t n, std::size_t degree, Xoshiro256& rng) {
  std::vector<std::vector<Vertex>> adj(n);
  std::vector<Vertex> open;
  open.reserve(n);
  for (std::size_t u = 0; u < n; ++u) open.push_back(static_cast<Vertex>(u));

  std::vector<Edge> edges;
  const std::size_t budget = 50 * n * std::max<std::size_t>(degree, 1);
  for (std::size_t attempt = 0; attempt < budget && open.size() >= 2; ++attempt) {
    const auto i = static_cast<std::size_t>(rng.below(open.size()));
    auto j = static_cast<std::size_t>(rng.below(open.size() - 1));
    if (j >= i) ++j;
    const Vertex u = open[i];
    const Vertex v = open[j];
    if (within_distance_three(adj, u, v)) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
    edges.emplace_back(std::min(u, v), std::max(u, v));
    // Remove saturated endpoints, higher index first so i/j stay valid.
    for (std::size_t idx : {std::max(i, j), std::min(i, j)}) {
      if (adj[open[idx]].size() >= degree) {
        open[idx] = open.back();
        open.pop_back();
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return Graph::from_edges(n, edges);
}

}  // namespace

std::string_view to_string(GraphFamily family) {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "unknown";
}

GraphFamily parse_graph_family(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames) {
    if (n == name) return f;
  }
  throw InvalidSpec("unknown graph family '" + std::string(name) + "'");
}

void GraphFamilySpec::validate() const {
  const bool p_ok = edge_probability >= 0.0 && edge_probability <= 1.0 && !std::isnan(edge_probability);
  switch (family) {
    case GraphFamily::cycle:
      if (n < 3) throw InvalidSpec("cycle requires n >= 3");
      break;
    case GraphFamily::complete_bipartite:
      if (degree_target < 1) throw InvalidSpec("complete_bipartite requires degree_target >= 1");
      break;
    case GraphFamily::random_bipartite:
      if (n < 2) throw InvalidSpec("random_bipartite requires n >= 2");
      if (!p_ok) throw InvalidSpec("edge_probability must lie in [0, 1]");
      break;
    case GraphFamily::random_triangle_free:
      if (n < 1) throw InvalidSpec("random_triangle_free requires n >= 1");
      if (!p_ok) throw InvalidSpec("edge_probability must lie in [0, 1]");
      break;
    case GraphFamily::regular_high_girth_attempt:
      if (n < 2) throw InvalidSpec("regular_high_girth_attempt requires n >= 2");
      if (degree_target < 1 || degree_target >= n) {
        throw InvalidSpec("regular_high_girth_attempt requires 1 <= degree_target < n");
      }
      break;
  }
}

Graph generate(const GraphFamilySpec& spec) {
  spec.validate();
  auto rng = make_stream(spec.seed, Stream::generator, static_cast<std::uint64_t>(spec.family));
  switch (spec.family) {
    case GraphFamily::cycle:
      return make_cycle(spec.n);
    case GraphFamily::complete_bipartite:
      return make_complete_bipartite(spec.degree_target);
    case GraphFamily::random_bipartite:
      return make_random_bipartite(spec.n, spec.edge_probability, rng);
    case GraphFamily::random_triangle_free:
      return make_random_triangle_free(spec.n, spec.edge_probability, rng);
    case GraphFamily::regular_high_girth_attempt:
      return make_high_girth_attempt(spec.n, spec.degree_target, rng);
  }
  throw InvalidSpec("unhandled graph family");
}

}  // namespace nibble
