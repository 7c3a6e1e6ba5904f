#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cograph/cotree.hpp"
#include "cograph/graph.hpp"
#include "cograph/text_io.hpp"
#include "cograph/tree.hpp"

namespace cograph {

// Opaque symbol id in 0..k-1.
using Symbol = std::uint32_t;

// Symmetric map from vertex pairs into M ∪ {∅}, M = {0..k-1}. The diagonal
// is exactly ∅ and the table is symmetric; both are enforced on construction.
class SymbolicMap {
 public:
  static constexpr Symbol kEmpty = std::numeric_limits<Symbol>::max();

  SymbolicMap() = default;

  // Row-major n*n table; kEmpty stands for ∅.
  SymbolicMap(std::size_t n, std::size_t alphabet, std::vector<Symbol> table)
      : n_(n), alphabet_(alphabet), table_(std::move(table)) {
    if (table_.size() != n_ * n_) throw Error("symbolic map table must have n*n entries");
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t y = 0; y < n_; ++y) {
        const Symbol s = table_[x * n_ + y];
        if (x == y && s != kEmpty) {
          throw Error("diagonal entry (" + std::to_string(x) + "," + std::to_string(x) +
                      ") must be the empty symbol");
        }
        if (x != y && s == kEmpty) {
          throw Error("off-diagonal entry (" + std::to_string(x) + "," + std::to_string(y) +
                      ") is the empty symbol");
        }
        if (x != y && s >= alphabet_) {
          throw Error("symbol " + std::to_string(s) + " at (" + std::to_string(x) + "," +
                      std::to_string(y) + ") is outside the alphabet of size " +
                      std::to_string(alphabet_));
        }
        if (s != table_[y * n_ + x]) {
          throw Error("map is not symmetric at (" + std::to_string(x) + "," + std::to_string(y) +
                      ")");
        }
      }
    }
  }

  // f is queried once per pair x < y.
  template <typename F>
  static SymbolicMap from_pairs(std::size_t n, std::size_t alphabet, F&& f) {
    std::vector<Symbol> table(n * n, kEmpty);
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y = x + 1; y < n; ++y) {
        const Symbol s = f(x, y);
        table[x * n + y] = s;
        table[y * n + x] = s;
      }
    }
    return SymbolicMap(n, alphabet, std::move(table));
  }

  std::size_t order() const noexcept { return n_; }
  std::size_t alphabet_size() const noexcept { return alphabet_; }

  // Raw entry; kEmpty on the diagonal.
  Symbol operator()(Vertex x, Vertex y) const noexcept { return table_[x * n_ + y]; }

  std::optional<Symbol> at(Vertex x, Vertex y) const {
    if (x >= n_ || y >= n_) throw Error("vertex out of range for symbolic map");
    const Symbol s = (*this)(x, y);
    if (s == kEmpty) return std::nullopt;
    return s;
  }

  bool operator==(const SymbolicMap&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t alphabet_ = 0;
  std::vector<Symbol> table_;
};

using SymbolTree = LabeledTree<Symbol>;

enum class Axiom { U2, U3, U2Prime, U3Prime };

inline std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::U2: return "U2";
    case Axiom::U3: return "U3";
    case Axiom::U2Prime: return "U2'";
    case Axiom::U3Prime: return "U3'";
  }
  return "?";
}

// U2/U2': witness = {x, y, z} (ascending).
// U3: witness = (x, y, u, v) in path order, x < v, with
//     δ(x,y) = δ(y,u) = δ(u,v) ≠ δ(y,v) = δ(x,v) = δ(x,u).
// U3': witness = induced P4 (a, b, c, d) of the color graph G_symbol.
struct AxiomViolation {
  Axiom axiom = Axiom::U2;
  std::vector<Vertex> witness;
  std::optional<Symbol> symbol;

  bool operator==(const AxiomViolation&) const = default;
};

namespace detail {

inline bool violates_u2(const SymbolicMap& d, Vertex x, Vertex y, Vertex z) {
  const Symbol a = d(x, y), b = d(x, z), c = d(y, z);
  return a != b && a != c && b != c;
}

inline bool u3_pattern(const SymbolicMap& d, Vertex x, Vertex y, Vertex u, Vertex v) {
  const Symbol path = d(x, y);
  const Symbol chord = d(y, v);
  return path != chord && d(y, u) == path && d(u, v) == path && d(x, v) == chord &&
         d(x, u) == chord;
}

// Lexicographically smallest ordering (x, y, u, v) of {p0 < p1 < p2 < p3}
// that realizes the forbidden U3 pattern.
inline std::optional<std::array<Vertex, 4>> u3_on(const SymbolicMap& d,
                                                  std::array<Vertex, 4> q) {
  std::sort(q.begin(), q.end());
  do {
    if (q[0] < q[3] && u3_pattern(d, q[0], q[1], q[2], q[3])) return q;
  } while (std::next_permutation(q.begin(), q.end()));
  return std::nullopt;
}

}  // namespace detail

// Direct check of axioms U2 and U3 by enumerating all triples, then all
// quadruples, in lexicographic order. nullopt iff d is a symbolic
// ultrametric (U0 and U1 hold by construction).
inline std::optional<AxiomViolation> check_axioms(const SymbolicMap& d) {
  const auto n = static_cast<Vertex>(d.order());
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      for (Vertex z = y + 1; z < n; ++z) {
        if (detail::violates_u2(d, x, y, z)) return AxiomViolation{Axiom::U2, {x, y, z}, {}};
      }
    }
  }
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      for (Vertex c = b + 1; c < n; ++c) {
        for (Vertex e = c + 1; e < n; ++e) {
          if (auto q = detail::u3_on(d, {a, b, c, e})) {
            return AxiomViolation{Axiom::U3, {(*q)[0], (*q)[1], (*q)[2], (*q)[3]}, {}};
          }
        }
      }
    }
  }
  return std::nullopt;
}

// G_m: the pairs that d maps to m.
inline Graph color_graph(const SymbolicMap& d, Symbol m) {
  if (m >= d.alphabet_size()) {
    throw Error("symbol " + std::to_string(m) + " is not in the alphabet of size " +
                std::to_string(d.alphabet_size()));
  }
  std::vector<Edge> edges;
  const auto n = static_cast<Vertex>(d.order());
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      if (d(x, y) == m) edges.emplace_back(x, y);
    }
  }
  return Graph(d.order(), std::move(edges));
}

// Graph-family check: every triple has two pairs of a common color (U2')
// and every color graph G_m is a cograph (U3'). Must agree with
// check_axioms on every input.
inline std::optional<AxiomViolation> check_via_graphs(const SymbolicMap& d) {
  const auto n = static_cast<Vertex>(d.order());
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      for (Vertex z = y + 1; z < n; ++z) {
        const Symbol a = d(x, y), b = d(x, z), c = d(y, z);
        if (a != b && a != c && b != c) return AxiomViolation{Axiom::U2Prime, {x, y, z}, {}};
      }
    }
  }
  if (n == 0) return std::nullopt;
  for (Symbol m = 0; m < d.alphabet_size(); ++m) {
    auto result = recognize(color_graph(d, m));
    if (const auto* w = std::get_if<P4Witness>(&result)) {
      return AxiomViolation{Axiom::U3Prime, {w->a, w->b, w->c, w->d}, m};
    }
  }
  return std::nullopt;
}

// Re-checks a reported violation against the map.
inline bool violation_holds(const SymbolicMap& d, const AxiomViolation& v) {
  const auto& w = v.witness;
  for (Vertex x : w) {
    if (x >= d.order()) return false;
  }
  switch (v.axiom) {
    case Axiom::U2:
    case Axiom::U2Prime:
      return w.size() == 3 && w[0] != w[1] && w[0] != w[2] && w[1] != w[2] &&
             detail::violates_u2(d, w[0], w[1], w[2]);
    case Axiom::U3:
      return w.size() == 4 && detail::u3_pattern(d, w[0], w[1], w[2], w[3]);
    case Axiom::U3Prime:
      return w.size() == 4 && v.symbol && *v.symbol < d.alphabet_size() &&
             is_witness(color_graph(d, *v.symbol), {w[0], w[1], w[2], w[3]});
  }
  return false;
}

class NotUltrametric : public Error {
 public:
  explicit NotUltrametric(AxiomViolation v)
      : Error("map is not a symbolic ultrametric (" + std::string(axiom_name(v.axiom)) +
              " violated)"),
        violation_(std::move(v)) {}
  const AxiomViolation& violation() const noexcept { return violation_; }

 private:
  AxiomViolation violation_;
};

// d_(T,t): the map that sends x≠y to the label of lca(x, y).
inline SymbolicMap tree_map(const SymbolTree& t, std::size_t alphabet) {
  return SymbolicMap::from_pairs(t.leaf_count(), alphabet,
                                 [&](Vertex x, Vertex y) { return *t.lca_label(x, y); });
}

// Symbolic representation of an ultrametric d.
//
// On every vertex set of size >= 2, the root takes the smallest symbol m
// for which the graph of pairs not labelled m is disconnected; its children
// are the components of that graph. The components' own roots never reuse
// m, so the result is collapsed.
inline SymbolTree build_representation(const SymbolicMap& d) {
  if (d.order() == 0) throw Error("build_representation needs at least one vertex");
  if (auto v = check_axioms(d)) throw NotUltrametric(std::move(*v));

  std::vector<SymbolTree::Node> nodes;
  struct Frame {
    std::vector<Vertex> subset;
    std::size_t node;
  };
  std::vector<Vertex> all(d.order());
  for (Vertex v = 0; v < d.order(); ++v) all[v] = v;
  nodes.emplace_back();
  std::vector<Frame> work{{std::move(all), 0}};

  while (!work.empty()) {
    Frame f = std::move(work.back());
    work.pop_back();
    if (f.subset.size() == 1) {
      nodes[f.node] = SymbolTree::leaf(f.subset.front());
      continue;
    }
    std::optional<Symbol> chosen;
    std::vector<std::vector<Vertex>> groups;
    for (Symbol m = 0; m < d.alphabet_size() && !chosen; ++m) {
      groups.clear();
      std::vector<char> taken(f.subset.size(), 0);
      for (std::size_t s = 0; s < f.subset.size(); ++s) {
        if (taken[s]) continue;
        taken[s] = 1;
        std::vector<std::size_t> queue{s};
        for (std::size_t q = 0; q < queue.size(); ++q) {
          const Vertex x = f.subset[queue[q]];
          for (std::size_t t = 0; t < f.subset.size(); ++t) {
            if (!taken[t] && d(x, f.subset[t]) != m) {
              taken[t] = 1;
              queue.push_back(t);
            }
          }
        }
        std::vector<Vertex> group;
        for (std::size_t q : queue) group.push_back(f.subset[q]);
        std::sort(group.begin(), group.end());
        groups.push_back(std::move(group));
      }
      if (groups.size() > 1) chosen = m;
    }
    if (!chosen) {
      throw Error("no splitting symbol found; map is not an ultrametric");
    }
    std::vector<std::size_t> kids;
    for (auto& group : groups) {
      kids.push_back(nodes.size());
      nodes.emplace_back();
      work.push_back({std::move(group), kids.back()});
    }
    nodes[f.node] = SymbolTree::inner(*chosen, std::move(kids));
  }
  return SymbolTree(std::move(nodes));
}

inline constexpr Symbol kNonEdgeSymbol = 0;
inline constexpr Symbol kEdgeSymbol = 1;

// Two-symbol map: edges get kEdgeSymbol, non-edges kNonEdgeSymbol.
inline SymbolicMap delta_from_graph(const Graph& g) {
  return SymbolicMap::from_pairs(g.order(), 2, [&](Vertex x, Vertex y) {
    return g.adjacent(x, y) ? kEdgeSymbol : kNonEdgeSymbol;
  });
}

struct SeparationSearch {
  std::optional<SymbolicMap> map;
  std::uint64_t partitions_screened = 0;  // set partitions of the pair set visited
  std::uint64_t candidates_checked = 0;   // of those, separating and within budget
};

inline constexpr std::size_t kSeparationSearchMaxVertices = 6;

// Exhaustive search for a symbolic ultrametric that never gives an edge
// and a non-edge the same symbol.
//
// Every set partition of the vertex pairs (pairs in lexicographic order,
// partitions as restricted growth strings) is screened; partitions whose
// blocks never mix edges with non-edges and have at most `max_symbols`
// blocks become maps (block index = symbol) and are checked against the
// axioms. The first hit in enumeration order is returned.
inline SeparationSearch search_separating_delta(const Graph& g, std::size_t max_symbols) {
  if (g.order() > kSeparationSearchMaxVertices) {
    throw Error("search_separating_delta supports at most " +
                std::to_string(kSeparationSearchMaxVertices) + " vertices, got " +
                std::to_string(g.order()));
  }
  const auto n = static_cast<Vertex>(g.order());
  std::vector<Edge> pairs;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) pairs.emplace_back(x, y);
  }
  const std::size_t count = pairs.size();
  std::vector<char> is_edge(count);
  for (std::size_t i = 0; i < count; ++i) is_edge[i] = g.adjacent(pairs[i].u, pairs[i].v);

  SeparationSearch result;
  std::vector<Symbol> block(count, 0);
  // Per block: number of edge pairs and of non-edge pairs.
  std::vector<std::array<std::size_t, 2>> members(count + 1, {0, 0});
  std::size_t mixed = 0;

  auto mixes = [&](std::size_t b) { return members[b][0] > 0 && members[b][1] > 0; };

  auto evaluate = [&](std::size_t blocks) -> bool {
    ++result.partitions_screened;
    if (mixed > 0 || blocks > max_symbols) return false;
    ++result.candidates_checked;
    std::vector<Symbol> table(std::size_t{n} * n, SymbolicMap::kEmpty);
    for (std::size_t i = 0; i < count; ++i) {
      table[pairs[i].u * n + pairs[i].v] = block[i];
      table[pairs[i].v * n + pairs[i].u] = block[i];
    }
    SymbolicMap d(n, std::max<std::size_t>(blocks, 1), std::move(table));
    if (check_axioms(d)) return false;
    result.map = std::move(d);
    return true;
  };

  std::function<bool(std::size_t, std::size_t)> descend = [&](std::size_t i,
                                                              std::size_t blocks) -> bool {
    if (i == count) return evaluate(blocks);
    for (std::size_t b = 0; b <= blocks && b < count; ++b) {
      const bool was_mixed = mixes(b);
      block[i] = static_cast<Symbol>(b);
      ++members[b][is_edge[i] ? 0 : 1];
      if (!was_mixed && mixes(b)) ++mixed;
      const bool found = descend(i + 1, b == blocks ? blocks + 1 : blocks);
      if (!was_mixed && mixes(b)) --mixed;
      --members[b][is_edge[i] ? 0 : 1];
      if (found) return true;
    }
    return false;
  };
  descend(0, 0);
  return result;
}

// Text format: "n k", then n rows of n tokens; '-' on the diagonal and
// s0..s(k-1) elsewhere.
inline SymbolicMap read_symbolic_map(std::istream& in) {
  text::LineReader reader(in);
  auto header = reader.expect("header 'n k'");
  text::expect_arity(header, 2, reader.line(), "header 'n k'");
  const auto n = static_cast<std::size_t>(text::parse_count(header[0], reader.line(), "n"));
  const auto k = static_cast<std::size_t>(text::parse_count(header[1], reader.line(), "k"));
  std::vector<Symbol> table(n * n, SymbolicMap::kEmpty);
  std::vector<std::size_t> row_line(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    auto tokens = reader.expect("row " + std::to_string(x));
    const std::size_t line = reader.line();
    row_line[x] = line;
    text::expect_arity(tokens, n, line, "row of " + std::to_string(n) + " symbols");
    for (std::size_t y = 0; y < n; ++y) {
      const std::string& tok = tokens[y];
      if (tok == "-") {
        if (x != y) throw ParseError(line, "empty symbol '-' off the diagonal at column " + std::to_string(y));
        continue;
      }
      if (x == y) throw ParseError(line, "diagonal entry must be '-', got '" + tok + "'");
      if (tok.size() < 2 || tok[0] != 's') {
        throw ParseError(line, "expected a symbol token s<id>, got '" + tok + "'");
      }
      const auto id = text::parse_count(std::string_view(tok).substr(1), line, "symbol id");
      if (static_cast<std::size_t>(id) >= k) {
        throw ParseError(line, "symbol '" + tok + "' outside alphabet of size " + std::to_string(k));
      }
      table[x * n + y] = static_cast<Symbol>(id);
    }
    for (std::size_t y = 0; y < x; ++y) {
      if (table[x * n + y] != table[y * n + x]) {
        throw ParseError(line, "not symmetric: entry (" + std::to_string(x) + "," +
                                   std::to_string(y) + ") differs from line " +
                                   std::to_string(row_line[y]));
      }
    }
  }
  reader.expect_end();
  return SymbolicMap(n, k, std::move(table));
}

inline SymbolicMap parse_symbolic_map(const std::string& text) {
  std::istringstream in(text);
  return read_symbolic_map(in);
}

inline void write_symbolic_map(std::ostream& out, const SymbolicMap& d) {
  out << d.order() << ' ' << d.alphabet_size() << '\n';
  for (Vertex x = 0; x < d.order(); ++x) {
    for (Vertex y = 0; y < d.order(); ++y) {
      if (y > 0) out << ' ';
      if (x == y) {
        out << '-';
      } else {
        out << 's' << d(x, y);
      }
    }
    out << '\n';
  }
}

inline std::string to_newick(const SymbolTree& t) {
  return to_newick(t, [](Symbol s) { return "s" + std::to_string(s); });
}

inline SymbolTree parse_symbol_tree(std::string_view text) {
  return parse_newick<Symbol>(text, [](std::string_view tok) -> Symbol {
    if (tok.size() < 2 || tok[0] != 's') throw Error("symbol label must look like s<id>");
    return static_cast<Symbol>(text::parse_count(tok.substr(1), 0, "symbol id"));
  });
}

}  // namespace cograph
