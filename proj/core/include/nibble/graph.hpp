#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nibble {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateEdge : public GraphError {
 public:
  DuplicateEdge(Vertex u, Vertex v);
};

class SelfLoop : public GraphError {
 public:
  explicit SelfLoop(Vertex u);
};

class IndexOutOfRange : public GraphError {
 public:
  IndexOutOfRange(Vertex u, std::size_t vertex_count);
};

class InvalidSpec : public GraphError {
 public:
  using GraphError::GraphError;
};

class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable simple undirected graph stored as CSR adjacency.
///
/// Neighbor lists are sorted ascending; the "uncolored subgraph" of a run is
/// never materialized, so one Graph can be shared read-only across threads.
class Graph {
 public:
  Graph() = default;

  /// Throws DuplicateEdge, SelfLoop or IndexOutOfRange.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  std::size_t degree(Vertex u) const noexcept { return offsets_[u + 1] - offsets_[u]; }

  std::span<const Vertex> neighbors(Vertex u) const noexcept {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }

  bool adjacent(Vertex u, Vertex v) const noexcept;

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::size_t max_degree_ = 0;
};

// Same as Graph::from_edges.
Graph build_graph(std::span<const Edge> edges, std::size_t vertex_count);

bool is_triangle_free(const Graph& g);

enum class GraphFamily {
  cycle,
  complete_bipartite,
  random_bipartite,
  random_triangle_free,
  regular_high_girth_attempt,
};

std::string_view to_string(GraphFamily family);
GraphFamily parse_graph_family(std::string_view name);

struct GraphFamilySpec {
  GraphFamily family = GraphFamily::cycle;
  std::size_t n = 0;
  std::size_t degree_target = 0;
  double edge_probability = 0.0;
  std::uint64_t seed = 0;

  /// Throws InvalidSpec describing the first bad field.
  void validate() const;
};

/// Deterministic in the spec; every family yields a triangle-free graph.
///
/// - cycle: C_n, n >= 3.
/// - complete_bipartite: K_{d,d} with d = degree_target (n ignored).
/// - random_bipartite: sides of n/2 and n - n/2, each cross pair kept with
///   edge_probability.
/// - random_triangle_free: G(n, p), then edges scanned in (u, v) order and any
///   edge that closes a triangle with the edges kept so far is dropped.
/// - regular_high_girth_attempt: random matchings towards a degree_target
///   regular graph rejecting edges that would create cycles of length <= 4.
///   Best effort, so some vertices may end below the target degree.
Graph generate(const GraphFamilySpec& spec);

Graph read_dimacs(std::string_view text);
std::string write_dimacs(const Graph& g);

}  // namespace nibble
