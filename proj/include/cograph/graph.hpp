#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cograph/error.hpp"

namespace cograph {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  auto operator<=>(const Edge&) const = default;
};

// Induced path a-b-c-d: ab, bc, cd are edges; ac, bd, ad are not. Stored
// with a < d so that each induced P4 has exactly one witness.
struct P4Witness {
  Vertex a = 0, b = 0, c = 0, d = 0;

  std::array<Vertex, 4> as_array() const { return {a, b, c, d}; }
  auto operator<=>(const P4Witness&) const = default;
};

// Immutable undirected simple graph on vertices 0..n-1.
//
// Edges are kept as a sorted list (the canonical form used by every file
// format) together with CSR adjacency and a packed adjacency bit matrix
// for constant-time chord lookups.
class Graph {
 public:
  Graph() = default;

  // Validates and canonicalizes; duplicates are merged.
  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (const Edge& e : edges_) {
      if (e.u == e.v) {
        throw Error("self-loop at vertex " + std::to_string(e.u));
      }
      if (e.v >= n_) {
        throw Error("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                    "} references a vertex >= n=" + std::to_string(n_));
      }
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    index();
  }

  std::size_t order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  bool adjacent(Vertex u, Vertex v) const noexcept {
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  // Position of {u,v} in edges(), if present.
  std::optional<std::size_t> edge_index(Vertex u, Vertex v) const {
    const Edge key(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void index() {
    words_ = (n_ + 63) / 64;
    bits_.assign(n_ * words_, 0);
    offsets_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) {
      bits_[e.u * words_ + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
      bits_[e.v * words_ + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // Sorted edge order yields sorted neighbor lists.
    for (const Edge& e : edges_) adjacency_[fill[e.u]++] = e.v;
    for (const Edge& e : edges_) adjacency_[fill[e.v]++] = e.u;
    for (std::size_t v = 0; v < n_; ++v) {
      std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

// Checked constructor for untrusted input (CLI, file readers).
inline Graph build_graph(std::int64_t n,
                         std::span<const std::pair<std::int64_t, std::int64_t>> pairs) {
  if (n < 0) throw Error("negative vertex count " + std::to_string(n));
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                  ") has an endpoint outside 0.." + std::to_string(n - 1));
    }
    if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

inline Graph build_graph(std::int64_t n,
                         std::initializer_list<std::pair<std::int64_t, std::int64_t>> pairs) {
  return build_graph(n, std::span<const std::pair<std::int64_t, std::int64_t>>(
                            pairs.begin(), pairs.size()));
}

inline std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.order(); ++v) best = std::max(best, g.degree(v));
  return best;
}

inline Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  const auto n = static_cast<Vertex>(g.order());
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!g.adjacent(u, v)) edges.emplace_back(u, v);
    }
  }
  return Graph(g.order(), std::move(edges));
}

// G□H with (g, h) flattened to g * |V(H)| + h.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
  const auto nh = static_cast<Vertex>(h.order());
  std::vector<Edge> edges;
  edges.reserve(g.order() * h.size() + h.order() * g.size());
  for (const Edge& e : g.edges()) {
    for (Vertex y = 0; y < nh; ++y) edges.emplace_back(e.u * nh + y, e.v * nh + y);
  }
  for (Vertex x = 0; x < g.order(); ++x) {
    for (const Edge& e : h.edges()) edges.emplace_back(x * nh + e.u, x * nh + e.v);
  }
  return Graph(g.order() * h.order(), std::move(edges));
}

// Q_d: words of d bits, adjacent iff they differ in exactly one bit.
inline Graph hypercube(std::size_t d) {
  if (d >= 31) throw Error("hypercube dimension " + std::to_string(d) + " is too large");
  const Vertex n = Vertex{1} << d;
  std::vector<Edge> edges;
  edges.reserve(d * (n / 2));
  for (Vertex x = 0; x < n; ++x) {
    for (std::size_t c = 0; c < d; ++c) {
      const Vertex y = x ^ (Vertex{1} << c);
      if (x < y) edges.emplace_back(x, y);
    }
  }
  return Graph(n, std::move(edges));
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Graph(n, std::move(edges));
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph(n, std::move(edges));
}

// K_k on 0..k-1 plus the path (k-1)-k-(k+1); the pendant vertices play the
// roles a = k and b = k + 1.
inline Graph complete_with_pendant_path(std::size_t k) {
  if (k < 2) throw Error("complete_with_pendant_path needs k >= 2");
  const Graph clique = complete_graph(k);
  std::vector<Edge> edges(clique.edges().begin(), clique.edges().end());
  const auto a = static_cast<Vertex>(k);
  edges.emplace_back(a - 1, a);
  edges.emplace_back(a, a + 1);
  return Graph(k + 2, std::move(edges));
}

// Subgraph induced by `vertices`, relabelled to 0..|vertices|-1 in the
// given order.
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.adjacent(vertices[i], vertices[j])) {
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return Graph(vertices.size(), std::move(edges));
}

// Graph on n vertices holding exactly `edges` (a class of a decomposition,
// a color class, ...).
inline Graph spanning_subgraph(std::size_t n, std::span<const Edge> edges) {
  return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> components;
  std::vector<char> seen(g.order(), 0);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Vertex w : g.neighbors(comp[i])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

inline bool is_witness(const Graph& g, const P4Witness& w) {
  const auto q = w.as_array();
  for (Vertex x : q) {
    if (x >= g.order()) return false;
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (q[i] == q[j]) return false;
    }
  }
  return g.adjacent(w.a, w.b) && g.adjacent(w.b, w.c) && g.adjacent(w.c, w.d) &&
         !g.adjacent(w.a, w.c) && !g.adjacent(w.b, w.d) && !g.adjacent(w.a, w.d);
}

// Every induced P4, each once (a < d), in lexicographic order. Empty iff
// g is a cograph.
inline std::vector<P4Witness> enumerate_induced_p4(const Graph& g) {
  std::vector<P4Witness> out;
  for (const Edge& mid : g.edges()) {
    for (const auto& [b, c] : {std::pair{mid.u, mid.v}, std::pair{mid.v, mid.u}}) {
      for (Vertex a : g.neighbors(b)) {
        if (a == c || g.adjacent(a, c)) continue;
        for (Vertex d : g.neighbors(c)) {
          if (d == b || d == a || g.adjacent(d, b) || g.adjacent(a, d)) continue;
          if (a < d) out.push_back({a, b, c, d});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cograph
