#pragma once

// Edge-list text format:
//
//   n m
//   u v        (m lines, 0 <= u < v < n, ASCII decimal)
//
// serialize_graph writes edges in lexicographic order with a trailing
// newline. parse_graph also accepts "v u" orientation and a missing final
// newline.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "satlab/graph.hpp"

namespace satlab {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { kMalformedHeader, kMalformedEdge, kVertexOutOfRange, kSelfLoop, kDuplicateEdge, kEdgeCountMismatch };

  ParseError(Kind kind, std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

namespace detail {

inline bool parse_two(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
  auto skip = [&](std::size_t i) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    return i;
  };
  std::size_t i = skip(0);
  auto r1 = std::from_chars(line.data() + i, line.data() + line.size(), a);
  if (r1.ec != std::errc{} || r1.ptr == line.data() + i) return false;
  std::size_t j = static_cast<std::size_t>(r1.ptr - line.data());
  if (j >= line.size() || (line[j] != ' ' && line[j] != '\t')) return false;
  j = skip(j);
  auto r2 = std::from_chars(line.data() + j, line.data() + line.size(), b);
  if (r2.ec != std::errc{} || r2.ptr == line.data() + j) return false;
  return skip(static_cast<std::size_t>(r2.ptr - line.data())) == line.size();
}

}  // namespace detail

inline Graph parse_graph(std::string_view text) {
  using K = ParseError::Kind;
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty()) throw ParseError(K::kMalformedHeader, 1, "missing header \"n m\"");

  std::uint64_t n = 0;
  std::uint64_t m = 0;
  if (!detail::parse_two(lines[0], n, m)) throw ParseError(K::kMalformedHeader, 1, "header must be \"n m\"");
  if (n > (std::uint64_t{1} << 31)) throw ParseError(K::kMalformedHeader, 1, "vertex count too large");
  if (lines.size() - 1 != m) {
    // Tolerate trailing blank lines only.
    std::size_t used = lines.size();
    while (used > 1 && lines[used - 1].find_first_not_of(" \t\r") == std::string_view::npos) --used;
    if (used - 1 != m)
      throw ParseError(K::kEdgeCountMismatch, used, "header declares " + std::to_string(m) + " edges, found " +
                                                        std::to_string(used - 1));
  }

  Graph g(static_cast<std::size_t>(n));
  for (std::size_t i = 1; i <= m; ++i) {
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!detail::parse_two(lines[i], u, v)) throw ParseError(K::kMalformedEdge, i + 1, "edge line must be \"u v\"");
    if (u >= n || v >= n)
      throw ParseError(K::kVertexOutOfRange, i + 1, "vertex index must be < " + std::to_string(n));
    if (u == v) throw ParseError(K::kSelfLoop, i + 1, "self-loop at " + std::to_string(u));
    if (!g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
      throw ParseError(K::kDuplicateEdge, i + 1, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  }
  return g;
}

inline std::string serialize_graph(const Graph& g) {
  std::string out;
  out.reserve(16 + g.edge_count() * 12);
  out += std::to_string(g.vertex_count());
  out += ' ';
  out += std::to_string(g.edge_count());
  out += '\n';
  g.for_each_edge([&](Vertex u, Vertex v) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  });
  return out;
}

inline Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

inline void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << serialize_graph(g);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace satlab
