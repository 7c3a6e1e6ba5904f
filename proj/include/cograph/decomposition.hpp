#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cograph/cotree.hpp"
#include "cograph/graph.hpp"

namespace cograph {

enum class DecompositionMode { Partition, Cover };

inline std::string_view mode_name(DecompositionMode m) {
  return m == DecompositionMode::Partition ? "partition" : "cover";
}

inline DecompositionMode parse_mode(std::string_view s) {
  if (s == "partition") return DecompositionMode::Partition;
  if (s == "cover") return DecompositionMode::Cover;
  throw Error("mode must be 'partition' or 'cover', got '" + std::string(s) + "'");
}

// Family of edge classes E_1..E_k over a host graph. Each class is kept
// sorted and duplicate-free; whether the family really covers the host,
// is disjoint, and has cograph classes is what validate() reports.
class Decomposition {
 public:
  Decomposition(Graph host, std::vector<std::vector<Edge>> classes, DecompositionMode mode)
      : host_(std::move(host)), classes_(std::move(classes)), mode_(mode) {
    for (auto& c : classes_) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
  }

  const Graph& host() const noexcept { return host_; }
  std::span<const std::vector<Edge>> classes() const noexcept { return classes_; }
  std::size_t k() const noexcept { return classes_.size(); }
  DecompositionMode mode() const noexcept { return mode_; }

  Graph class_graph(std::size_t i) const { return spanning_subgraph(host_.order(), classes_.at(i)); }

  // Bitmask of classes containing each host edge (by host edge index).
  // Only meaningful for k <= 64.
  std::vector<std::uint64_t> membership() const {
    std::vector<std::uint64_t> mask(host_.size(), 0);
    for (std::size_t i = 0; i < classes_.size() && i < 64; ++i) {
      for (const Edge& e : classes_[i]) {
        if (auto idx = host_.edge_index(e.u, e.v)) mask[*idx] |= std::uint64_t{1} << i;
      }
    }
    return mask;
  }

  bool operator==(const Decomposition&) const = default;

 private:
  Graph host_;
  std::vector<std::vector<Edge>> classes_;
  DecompositionMode mode_;
};

// Outcome of validate(). `ok()` iff every check passed.
struct Validation {
  enum class Fault { None, NotHostEdge, Uncovered, Overlap, NotCograph };

  Fault fault = Fault::None;
  std::size_t class_index = 0;      // NotHostEdge, Overlap (second class), NotCograph
  std::optional<Edge> edge;         // NotHostEdge, Uncovered, Overlap
  std::optional<P4Witness> witness; // NotCograph

  bool ok() const noexcept { return fault == Fault::None; }
  std::string describe() const {
    auto edge_str = [&] {
      return edge ? "{" + std::to_string(edge->u) + "," + std::to_string(edge->v) + "}"
                  : std::string("?");
    };
    switch (fault) {
      case Fault::None: return "ok";
      case Fault::NotHostEdge:
        return "class " + std::to_string(class_index) + " contains non-host edge " + edge_str();
      case Fault::Uncovered: return "host edge " + edge_str() + " is in no class";
      case Fault::Overlap:
        return "edge " + edge_str() + " appears in more than one class (class " +
               std::to_string(class_index) + ")";
      case Fault::NotCograph:
        return "class " + std::to_string(class_index) + " contains induced P4 " +
               std::to_string(witness->a) + "-" + std::to_string(witness->b) + "-" +
               std::to_string(witness->c) + "-" + std::to_string(witness->d);
    }
    return "?";
  }
};

inline Validation validate(const Decomposition& d) {
  const Graph& host = d.host();
  std::vector<std::uint32_t> seen(host.size(), 0);
  for (std::size_t i = 0; i < d.k(); ++i) {
    for (const Edge& e : d.classes()[i]) {
      auto idx = host.edge_index(e.u, e.v);
      if (e.v >= host.order() || !idx) {
        return {Validation::Fault::NotHostEdge, i, e, std::nullopt};
      }
      if (++seen[*idx] > 1 && d.mode() == DecompositionMode::Partition) {
        return {Validation::Fault::Overlap, i, e, std::nullopt};
      }
    }
  }
  for (std::size_t j = 0; j < host.size(); ++j) {
    if (seen[j] == 0) return {Validation::Fault::Uncovered, 0, host.edges()[j], std::nullopt};
  }
  for (std::size_t i = 0; i < d.k(); ++i) {
    if (d.classes()[i].empty() || host.order() == 0) continue;
    auto r = recognize(d.class_graph(i));
    if (auto* w = std::get_if<P4Witness>(&r)) {
      return {Validation::Fault::NotCograph, i, std::nullopt, *w};
    }
  }
  return {};
}

// Cograph partition from a proper edge coloring with at most Δ+1 colors
// (Misra–Gries). Every class is a matching. Colors that end up unused are
// dropped; an edgeless graph yields one empty class.
inline Decomposition vizing_partition(const Graph& g) {
  const std::size_t n = g.order();
  const std::size_t delta = max_degree(g);
  const std::size_t colors = delta + 1;
  constexpr int kNone = -1;

  // color_of[u*n+v]; at[v*colors+c] = neighbor joined to v by color c.
  std::vector<int> color_of(n * n, kNone);
  std::vector<int> at(n * colors, kNone);

  auto get = [&](Vertex a, Vertex b) { return color_of[a * n + b]; };
  auto set = [&](Vertex a, Vertex b, int c) {
    const int old = color_of[a * n + b];
    if (old != kNone) {
      at[a * colors + static_cast<std::size_t>(old)] = kNone;
      at[b * colors + static_cast<std::size_t>(old)] = kNone;
    }
    color_of[a * n + b] = c;
    color_of[b * n + a] = c;
    if (c != kNone) {
      at[a * colors + static_cast<std::size_t>(c)] = static_cast<int>(b);
      at[b * colors + static_cast<std::size_t>(c)] = static_cast<int>(a);
    }
  };
  auto is_free = [&](Vertex v, int c) { return at[v * colors + static_cast<std::size_t>(c)] == kNone; };
  auto free_color = [&](Vertex v) {
    for (std::size_t c = 0; c < colors; ++c) {
      if (at[v * colors + c] == kNone) return static_cast<int>(c);
    }
    return kNone;
  };

  for (const Edge& e : g.edges()) {
    const Vertex u = e.u;
    // Maximal fan of u starting at v.
    std::vector<Vertex> fan{e.v};
    std::vector<char> in_fan(n, 0);
    in_fan[e.v] = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (Vertex w : g.neighbors(u)) {
        const int c = get(u, w);
        if (in_fan[w] || c == kNone || !is_free(fan.back(), c)) continue;
        fan.push_back(w);
        in_fan[w] = 1;
        grew = true;
        break;
      }
    }
    const int c = free_color(u);
    const int d = free_color(fan.back());

    // Invert the cd-path through u (it starts with a d-edge, c being free on u).
    if (c != d) {
      std::vector<std::pair<Vertex, Vertex>> path;
      Vertex x = u;
      int want = d;
      while (!is_free(x, want)) {
        const auto y = static_cast<Vertex>(at[x * colors + static_cast<std::size_t>(want)]);
        path.emplace_back(x, y);
        x = y;
        want = want == d ? c : d;
      }
      std::vector<int> old;
      for (auto [a, b] : path) {
        old.push_back(get(a, b));
        set(a, b, kNone);
      }
      for (std::size_t i = 0; i < path.size(); ++i) {
        set(path[i].first, path[i].second, old[i] == d ? c : d);
      }
    }

    // Shortest fan prefix ending in a vertex where d is free.
    std::size_t stop = 0;
    for (std::size_t i = 0; i < fan.size(); ++i) {
      if (i > 0 && !is_free(fan[i - 1], get(u, fan[i]))) break;
      if (is_free(fan[i], d)) {
        stop = i;
        break;
      }
      stop = i + 1;
    }
    if (stop >= fan.size() || !is_free(fan[stop], d)) {
      throw Error("vizing_partition: internal error, no rotatable fan prefix");
    }
    // Rotate the prefix and color the freed edge with d.
    std::vector<int> shifted;
    for (std::size_t i = 0; i < stop; ++i) shifted.push_back(get(u, fan[i + 1]));
    for (std::size_t i = 1; i <= stop; ++i) set(u, fan[i], kNone);
    for (std::size_t i = 0; i < stop; ++i) set(u, fan[i], shifted[i]);
    set(u, fan[stop], d);
  }

  std::vector<std::vector<Edge>> classes(colors);
  for (const Edge& e : g.edges()) {
    const int c = get(e.u, e.v);
    if (c == kNone) throw Error("vizing_partition: internal error, uncolored edge");
    classes[static_cast<std::size_t>(c)].push_back(e);
  }
  std::erase_if(classes, [](const auto& cls) { return cls.empty(); });
  if (classes.empty()) classes.emplace_back();
  return Decomposition(g, std::move(classes), DecompositionMode::Partition);
}

inline constexpr std::size_t kMaxSubsetScanClasses = 20;

namespace detail {

inline bool union_is_cograph(const Decomposition& d, std::uint64_t subset) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < d.k(); ++i) {
    if ((subset >> i) & 1U) edges.insert(edges.end(), d.classes()[i].begin(), d.classes()[i].end());
  }
  if (d.host().order() == 0) return true;
  return is_cograph(spanning_subgraph(d.host().order(), edges));
}

// Calls f(mask) for all subsets of {0..k-1} of size `size` in
// lexicographic order of their sorted index lists; stops when f is true.
template <typename F>
bool for_each_subset(std::size_t k, std::size_t size, F&& f) {
  if (size > k) return false;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    std::uint64_t mask = 0;
    for (std::size_t i : idx) mask |= std::uint64_t{1} << i;
    if (f(mask)) return true;
    std::size_t pos = size;
    while (pos > 0 && idx[pos - 1] == k - size + pos - 1) --pos;
    if (pos == 0) return false;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace detail

// True iff no union of two or more classes is a cograph.
inline bool is_coarsest(const Decomposition& d) {
  if (d.k() > kMaxSubsetScanClasses) {
    throw Error("is_coarsest: " + std::to_string(d.k()) + " classes exceed the limit of " +
                std::to_string(kMaxSubsetScanClasses));
  }
  if (!validate(d).ok()) throw Error("is_coarsest: decomposition does not validate");
  for (std::size_t size = 2; size <= d.k(); ++size) {
    if (detail::for_each_subset(d.k(), size,
                                [&](std::uint64_t s) { return detail::union_is_cograph(d, s); })) {
      return false;
    }
  }
  return true;
}

// Repeatedly merges the first mergeable subset (smallest size first, then
// lexicographic) into one class at the position of its lowest member,
// until the decomposition is coarsest.
inline Decomposition coarsen(const Decomposition& d) {
  if (auto v = validate(d); !v.ok()) throw Error("coarsen: invalid input: " + v.describe());
  if (d.k() > kMaxSubsetScanClasses) {
    throw Error("coarsen: " + std::to_string(d.k()) + " classes exceed the limit of " +
                std::to_string(kMaxSubsetScanClasses));
  }
  Decomposition cur = d;
  while (true) {
    std::optional<std::uint64_t> hit;
    for (std::size_t size = 2; size <= cur.k() && !hit; ++size) {
      detail::for_each_subset(cur.k(), size, [&](std::uint64_t s) {
        if (!detail::union_is_cograph(cur, s)) return false;
        hit = s;
        return true;
      });
    }
    if (!hit) return cur;
    std::vector<std::vector<Edge>> classes;
    std::optional<std::size_t> merged_at;
    for (std::size_t i = 0; i < cur.k(); ++i) {
      const auto& cls = cur.classes()[i];
      if (((*hit >> i) & 1U) == 0) {
        classes.push_back(cls);
      } else if (!merged_at) {
        merged_at = classes.size();
        classes.push_back(cls);
      } else {
        auto& target = classes[*merged_at];
        target.insert(target.end(), cls.begin(), cls.end());
      }
    }
    cur = Decomposition(cur.host(), std::move(classes), cur.mode());
  }
}

// Cheap pre-pass for large k: merge pairs of classes while some pair has
// a cograph union (first pair in lexicographic order each round).
inline Decomposition merge_pairs(const Decomposition& d) {
  Decomposition cur = d;
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < cur.k() && !merged; ++i) {
      for (std::size_t j = i + 1; j < cur.k() && !merged; ++j) {
        std::vector<Edge> edges(cur.classes()[i]);
        edges.insert(edges.end(), cur.classes()[j].begin(), cur.classes()[j].end());
        if (cur.host().order() > 0 && !is_cograph(spanning_subgraph(cur.host().order(), edges))) {
          continue;
        }
        std::vector<std::vector<Edge>> classes;
        for (std::size_t t = 0; t < cur.k(); ++t) {
          if (t == i) {
            classes.push_back(std::move(edges));
          } else if (t != j) {
            classes.push_back(cur.classes()[t]);
          }
        }
        cur = Decomposition(cur.host(), std::move(classes), cur.mode());
        merged = true;
      }
    }
  }
  return cur;
}

// A length-3 path a-b-c-d of the host (a < d), as host edge indices, with
// the chords ac, bd, ad that are present in the host. A class violates the
// constraint iff it holds all three path edges and none of the chords.
struct P4Constraint {
  P4Witness path;
  std::array<std::size_t, 3> path_edges{};
  std::vector<std::size_t> chord_edges;

  bool operator==(const P4Constraint&) const = default;
};

inline std::vector<P4Constraint> p4_constraints(const Graph& g) {
  std::vector<P4Constraint> out;
  auto id = [&](Vertex x, Vertex y) { return *g.edge_index(x, y); };
  for (const Edge& mid : g.edges()) {
    for (const auto& [b, c] : {std::pair{mid.u, mid.v}, std::pair{mid.v, mid.u}}) {
      for (Vertex a : g.neighbors(b)) {
        if (a == c) continue;
        for (Vertex d : g.neighbors(c)) {
          if (d == b || d == a || a > d) continue;
          P4Constraint pc;
          pc.path = {a, b, c, d};
          pc.path_edges = {id(a, b), id(b, c), id(c, d)};
          if (g.adjacent(a, c)) pc.chord_edges.push_back(id(a, c));
          if (g.adjacent(b, d)) pc.chord_edges.push_back(id(b, d));
          if (g.adjacent(a, d)) pc.chord_edges.push_back(id(a, d));
          out.push_back(std::move(pc));
        }
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const P4Constraint& x, const P4Constraint& y) { return x.path < y.path; });
  return out;
}

// Q_{2n} split into n classes; an edge flipping coordinate c goes to class
// c / 2, so every class is a disjoint union of squares.
inline Decomposition layers_partition(std::size_t n) {
  if (n < 1) throw Error("layers_partition needs n >= 1");
  const Graph q = hypercube(2 * n);
  std::vector<std::vector<Edge>> classes(n);
  for (const Edge& e : q.edges()) {
    const auto diff = e.u ^ e.v;
    std::size_t c = 0;
    while (((diff >> c) & 1U) == 0) ++c;
    classes[c / 2].push_back(e);
  }
  return Decomposition(q, std::move(classes), DecompositionMode::Partition);
}

}  // namespace cograph
