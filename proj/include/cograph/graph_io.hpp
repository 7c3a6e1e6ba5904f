#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cograph/graph.hpp"
#include "cograph/text_io.hpp"

namespace cograph {

// Edge-list text format:
//
//   n m
//   u v      (m lines, 0-based ids)
//
// Lines starting with '#' are comments. The writer emits edges in sorted
// order, so write(read(write(g))) is byte-identical.
inline Graph read_edge_list(std::istream& in) {
  text::LineReader reader(in);
  auto header = reader.expect("header 'n m'");
  text::expect_arity(header, 2, reader.line(), "header 'n m'");
  const auto n = text::parse_count(header[0], reader.line(), "vertex count");
  const auto m = text::parse_count(header[1], reader.line(), "edge count");
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  pairs.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    auto tokens = reader.expect("edge line 'u v'");
    text::expect_arity(tokens, 2, reader.line(), "edge line 'u v'");
    const auto u = text::parse_int(tokens[0], reader.line(), "vertex id");
    const auto v = text::parse_int(tokens[1], reader.line(), "vertex id");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError(reader.line(), "vertex id out of range 0.." + std::to_string(n - 1));
    }
    if (u == v) throw ParseError(reader.line(), "self-loop at vertex " + std::to_string(u));
    pairs.emplace_back(u, v);
  }
  reader.expect_end();
  return build_graph(n, pairs);
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

}  // namespace cograph
