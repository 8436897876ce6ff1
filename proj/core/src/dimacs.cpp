#include <charconv>
#include <set>
#include <sstream>

#include "nibble/graph.hpp"

namespace nibble {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::uint64_t parse_count(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "expected a nonnegative integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Graph read_dimacs(std::string_view text) {
  bool have_header = false;
  std::uint64_t vertex_count = 0;
  std::uint64_t declared_edges = 0;
  std::vector<Edge> edges;
  std::set<Edge> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0] == "c") continue;

    if (tokens[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      if (tokens.size() != 4 || (tokens[1] != "edge" && tokens[1] != "col")) {
        throw ParseError(line_no, "expected 'p edge N M'");
      }
      vertex_count = parse_count(tokens[2], line_no);
      declared_edges = parse_count(tokens[3], line_no);
      have_header = true;
    } else if (tokens[0] == "e") {
      if (!have_header) throw ParseError(line_no, "edge line before problem line");
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'e u v'");
      const auto u = parse_count(tokens[1], line_no);
      const auto v = parse_count(tokens[2], line_no);
      if (u < 1 || u > vertex_count || v < 1 || v > vertex_count) {
        throw ParseError(line_no, "vertex index out of range 1.." + std::to_string(vertex_count));
      }
      if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
      Edge e{static_cast<Vertex>(std::min(u, v) - 1), static_cast<Vertex>(std::max(u, v) - 1)};
      if (!seen.insert(e).second) throw ParseError(line_no, "duplicate edge");
      edges.push_back(e);
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tokens[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing problem line");
  if (edges.size() != declared_edges) {
    throw ParseError(line_no, "problem line declares " + std::to_string(declared_edges) + " edges, found " +
                                  std::to_string(edges.size()));
  }
  return Graph::from_edges(vertex_count, edges);
}

std::string write_dimacs(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

}  // namespace nibble
