#pragma once
// Random generators and brute-force oracles shared by the test binaries.
// The oracles use none of the library's algorithms, only Graph lookups.

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <span>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "cograph/cograph.hpp"

namespace testing_support {

using namespace cograph;
using Rng = std::mt19937_64;

inline Graph random_graph(Rng& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

// Graph number `code` on n vertices: bit i of code selects the i-th pair in
// lexicographic order.
inline Graph graph_from_code(std::size_t n, std::uint64_t code) {
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++bit) {
      if ((code >> bit) & 1U) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

// Random labeled tree over leaves 0..L-1. Children of a node get a label
// different from the parent's, so the tree is collapsed. `labels` >= 2.
template <typename Label>
LabeledTree<Label> random_tree(Rng& rng, std::size_t leaves, std::size_t labels,
                               const std::function<Label(std::size_t)>& make) {
  using T = LabeledTree<Label>;
  std::vector<Vertex> perm(leaves);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::vector<typename T::Node> nodes;
  std::function<std::size_t(std::span<const Vertex>, std::optional<std::size_t>)> grow =
      [&](std::span<const Vertex> part, std::optional<std::size_t> parent_label) -> std::size_t {
    if (part.size() == 1) {
      nodes.push_back(T::leaf(part[0]));
      return nodes.size() - 1;
    }
    std::size_t label = std::uniform_int_distribution<std::size_t>(0, labels - 1)(rng);
    if (parent_label && label == *parent_label) label = (label + 1) % labels;
    // cut the block into 2..min(size,4) consecutive non-empty pieces
    const std::size_t pieces =
        std::uniform_int_distribution<std::size_t>(2, std::min<std::size_t>(part.size(), 4))(rng);
    std::vector<std::size_t> cuts(part.size() - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(pieces - 1);
    std::sort(cuts.begin(), cuts.end());
    const std::size_t self = nodes.size();
    nodes.push_back(T::inner(make(label), {}));
    std::size_t from = 0;
    cuts.push_back(part.size());
    std::vector<std::size_t> kids;
    for (std::size_t to : cuts) {
      kids.push_back(grow(part.subspan(from, to - from), label));
      from = to;
    }
    nodes[self].children = std::move(kids);
    return self;
  };
  const std::size_t root = grow(perm, std::nullopt);
  if (root != 0) throw Error("generator invariant");
  return T(std::move(nodes));
}

inline Cotree random_cotree(Rng& rng, std::size_t leaves) {
  return random_tree<CoLabel>(rng, leaves, 2, [](std::size_t l) { return static_cast<CoLabel>(l); });
}

inline SymbolTree random_symbol_tree(Rng& rng, std::size_t leaves, std::size_t symbols) {
  return random_tree<Symbol>(rng, leaves, symbols,
                             [](std::size_t l) { return static_cast<Symbol>(l); });
}

inline SymbolicMap random_map(Rng& rng, std::size_t n, std::size_t k) {
  return SymbolicMap::from_pairs(n, k, [&](Vertex, Vertex) {
    return static_cast<Symbol>(std::uniform_int_distribution<std::size_t>(0, k - 1)(rng));
  });
}

// ---- oracles ----

// Unordered induced P4s counted by trying every ordered 4-tuple of distinct
// vertices and halving (each path has exactly two orientations).
inline std::size_t brute_p4_count(const Graph& g) {
  const auto n = static_cast<Vertex>(g.order());
  std::size_t ordered = 0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      for (Vertex c = 0; c < n; ++c)
        for (Vertex d = 0; d < n; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, d) && !g.adjacent(a, c) &&
              !g.adjacent(b, d) && !g.adjacent(a, d)) {
            ++ordered;
          }
        }
  return ordered / 2;
}

// Early-exit variant on neighbour bitmasks (n <= 32): a, then b in N(a),
// then c in N(b) outside N[a], then d in N(c) outside N[a] and N[b].
inline bool brute_has_p4(const Graph& g) {
  const std::size_t n = g.order();
  if (n > 32) return brute_p4_count(g) > 0;
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1U << e.v;
    adj[e.v] |= 1U << e.u;
  }
  for (std::size_t a = 0; a < n; ++a) {
    const std::uint32_t closed_a = adj[a] | (1U << a);
    for (std::uint32_t bs = adj[a]; bs; bs &= bs - 1) {
      const int b = std::countr_zero(bs);
      const std::uint32_t closed_b = adj[b] | (1U << b);
      for (std::uint32_t cs = adj[b] & ~closed_a; cs; cs &= cs - 1) {
        const int c = std::countr_zero(cs);
        if (adj[c] & ~closed_a & ~closed_b) return true;
      }
    }
  }
  return false;
}

// Cograph test by the closure definition: every induced subgraph with at
// least two vertices is disconnected or has a disconnected complement.
// Exponential; for n <= 8.
inline bool closure_cograph(const Graph& g) {
  const std::size_t n = g.order();
  auto connected = [&](std::uint32_t mask, bool comp) {
    const int first = std::countr_zero(mask);
    std::uint32_t seen = 1U << first, frontier = seen;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) {
        const auto u = static_cast<Vertex>(std::countr_zero(f));
        for (std::uint32_t r = mask & ~seen; r; r &= r - 1) {
          const auto v = static_cast<Vertex>(std::countr_zero(r));
          if (g.adjacent(u, v) != comp) next |= 1U << v;
        }
      }
      next &= ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == mask;
  };
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    if (connected(mask, false) && connected(mask, true)) return false;
  }
  return true;
}

// Bell numbers via the Bell triangle.
inline std::uint64_t bell(std::size_t n) {
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

// Does g admit a proper edge coloring with `colors` colors? Plain
// backtracking over edges in input order.
inline bool edge_colorable(const Graph& g, std::size_t colors) {
  const auto edges = g.edges();
  std::vector<std::size_t> color(edges.size(), colors);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == edges.size()) return true;
    for (std::size_t c = 0; c < colors; ++c) {
      bool clash = false;
      for (std::size_t j = 0; j < i && !clash; ++j) {
        const bool touch = edges[j].u == edges[i].u || edges[j].u == edges[i].v ||
                           edges[j].v == edges[i].u || edges[j].v == edges[i].v;
        clash = touch && color[j] == c;
      }
      if (clash) continue;
      color[i] = c;
      if (go(i + 1)) return true;
    }
    color[i] = colors;
    return false;
  };
  return go(0);
}

// Every map from edges to nonempty subsets of {0..k-1} (cover) or to single
// classes (partition), checked class by class with brute_has_p4. Calls
// visit(classes) for each valid one. No pruning.
inline std::size_t brute_decompositions(const Graph& g, std::size_t k, bool cover,
                                        const std::function<void(const std::vector<std::vector<Edge>>&)>& visit = {}) {
  const auto edges = g.edges();
  const std::size_t choices = cover ? (std::size_t{1} << k) - 1 : k;
  std::vector<std::size_t> digit(edges.size(), 0);
  std::size_t found = 0;
  while (true) {
    std::vector<std::vector<Edge>> classes(k);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::size_t mask = cover ? digit[i] + 1 : std::size_t{1} << digit[i];
      for (std::size_t c = 0; c < k; ++c) {
        if ((mask >> c) & 1U) classes[c].push_back(edges[i]);
      }
    }
    bool ok = true;
    for (const auto& cls : classes) {
      if (brute_has_p4(Graph(g.order(), cls))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ++found;
      if (visit) visit(classes);
    }
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == choices) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return found;
}

// Smallest k for which brute_decompositions finds a partition.
inline std::size_t brute_min_partition(const Graph& g) {
  if (g.size() == 0) return 1;
  for (std::size_t k = 1;; ++k) {
    if (brute_decompositions(g, k, false) > 0) return k;
  }
}

inline bool is_matching(const Graph& host, std::span<const Edge> cls) {
  std::vector<int> seen(host.order(), 0);
  for (const Edge& e : cls) {
    if (seen[e.u]++ || seen[e.v]++) return false;
  }
  return true;
}

inline std::array<std::array<Vertex, 2>, 12> literal_edges_0based() {
  return {{{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {1, 4}, {1, 5}, {5, 6}, {2, 6}, {2, 7}, {7, 8}, {0, 8}}};
}

}  // namespace testing_support
