#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cograph/graph.hpp"
#include "cograph/tree.hpp"

namespace cograph {

// Inner-node labels of a cotree: 0 = disjoint union, 1 = join.
enum class CoLabel : std::uint8_t { Union = 0, Join = 1 };

using Cotree = LabeledTree<CoLabel>;

inline CoLabel flip(CoLabel l) { return l == CoLabel::Union ? CoLabel::Join : CoLabel::Union; }

namespace detail {

// Vertices of `subset` grouped by connectivity in g[subset] (or in its
// complement). Groups come out ordered by smallest member.
inline std::vector<std::vector<Vertex>> split(const Graph& g, const std::vector<Vertex>& subset,
                                              bool in_complement) {
  std::vector<std::vector<Vertex>> groups;
  std::vector<char> taken(subset.size(), 0);
  for (std::size_t s = 0; s < subset.size(); ++s) {
    if (taken[s]) continue;
    taken[s] = 1;
    std::vector<std::size_t> queue{s};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Vertex x = subset[queue[q]];
      for (std::size_t t = 0; t < subset.size(); ++t) {
        if (!taken[t] && g.adjacent(x, subset[t]) != in_complement) {
          taken[t] = 1;
          queue.push_back(t);
        }
      }
    }
    std::vector<Vertex> group;
    group.reserve(queue.size());
    for (std::size_t q : queue) group.push_back(subset[q]);
    std::sort(group.begin(), group.end());
    groups.push_back(std::move(group));
  }
  return groups;
}

}  // namespace detail

// Decides whether g is a cograph. Returns its canonical cotree, or an
// induced P4 found inside a connected and co-connected vertex set.
//
// Recursive split: a disconnected set becomes a union node over its
// components, a co-disconnected set a join node over its co-components.
// A set of two or more vertices that is neither contains an induced P4.
inline std::variant<Cotree, P4Witness> recognize(const Graph& g) {
  if (g.order() == 0) throw Error("recognize: the empty graph has no cotree");
  std::vector<Cotree::Node> nodes;

  struct Frame {
    std::vector<Vertex> subset;
    std::size_t node;
  };
  std::vector<Vertex> all(g.order());
  for (Vertex v = 0; v < g.order(); ++v) all[v] = v;
  nodes.emplace_back();
  std::vector<Frame> work{{std::move(all), 0}};

  while (!work.empty()) {
    Frame f = std::move(work.back());
    work.pop_back();
    if (f.subset.size() == 1) {
      nodes[f.node] = Cotree::leaf(f.subset.front());
      continue;
    }
    CoLabel label = CoLabel::Union;
    auto groups = detail::split(g, f.subset, false);
    if (groups.size() == 1) {
      label = CoLabel::Join;
      groups = detail::split(g, f.subset, true);
    }
    if (groups.size() == 1) {
      const Graph sub = induced_subgraph(g, f.subset);
      const auto local = enumerate_induced_p4(sub);
      // A connected, co-connected graph on >= 2 vertices is never P4-free.
      const P4Witness& w = local.front();
      P4Witness out{f.subset[w.a], f.subset[w.b], f.subset[w.c], f.subset[w.d]};
      if (out.a > out.d) out = {out.d, out.c, out.b, out.a};
      return out;
    }
    std::vector<std::size_t> kids;
    for (auto& group : groups) {
      kids.push_back(nodes.size());
      nodes.emplace_back();
      work.push_back({std::move(group), kids.back()});
    }
    nodes[f.node] = Cotree::inner(label, std::move(kids));
  }
  return Cotree(std::move(nodes));
}

inline bool is_cograph(const Graph& g) {
  return g.order() == 0 || std::holds_alternative<Cotree>(recognize(g));
}

// Graph with edge {x,y} iff lca(x,y) is a join node.
inline Graph cotree_to_graph(const Cotree& t) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < t.nodes().size(); ++i) {
    const auto& nd = t.node(i);
    if (nd.is_leaf() || *nd.label != CoLabel::Join) continue;
    std::vector<std::vector<Vertex>> sides;
    for (std::size_t c : nd.children) sides.push_back(t.leaves_below(c));
    for (std::size_t a = 0; a < sides.size(); ++a) {
      for (std::size_t b = a + 1; b < sides.size(); ++b) {
        for (Vertex x : sides[a]) {
          for (Vertex y : sides[b]) edges.emplace_back(x, y);
        }
      }
    }
  }
  return Graph(t.leaf_count(), std::move(edges));
}

inline std::optional<CoLabel> lca_label(const Cotree& t, Vertex x, Vertex y) {
  return t.lca_label(x, y);
}

// Cotree of the complement graph.
inline Cotree flip_labels(const Cotree& t) {
  return t.relabel([](CoLabel l) { return flip(l); });
}

inline std::string to_newick(const Cotree& t) {
  return to_newick(t, [](CoLabel l) { return l == CoLabel::Join ? "1" : "0"; });
}

inline Cotree parse_cotree(std::string_view text) {
  return parse_newick<CoLabel>(text, [](std::string_view tok) {
    if (tok == "0") return CoLabel::Union;
    if (tok == "1") return CoLabel::Join;
    throw Error("cotree label must be 0 or 1, got '" + std::string(tok) + "'");
  });
}

}  // namespace cograph
