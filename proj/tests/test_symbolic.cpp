#include <gtest/gtest.h>

#include "support.hpp"

using namespace cograph;
using namespace testing_support;

namespace {

// Axioms straight from their definition: every 3-set uses at most two
// symbols; no 4-set, in any ordering x,y,u,v, has the path pairs xy,yu,uv
// on one symbol and the other three pairs on a different one.
bool naive_ultrametric(const SymbolicMap& d) {
  const auto n = static_cast<Vertex>(d.order());
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      for (Vertex z = 0; z < n; ++z) {
        if (x == y || y == z || x == z) continue;
        if (d(x, y) != d(x, z) && d(x, y) != d(y, z) && d(x, z) != d(y, z)) return false;
      }
  std::array<Vertex, 4> q{};
  for (q[0] = 0; q[0] < n; ++q[0])
    for (q[1] = 0; q[1] < n; ++q[1])
      for (q[2] = 0; q[2] < n; ++q[2])
        for (q[3] = 0; q[3] < n; ++q[3]) {
          const auto [x, y, u, v] = q;
          if (x == y || x == u || x == v || y == u || y == v || u == v) continue;
          const Symbol a = d(x, y);
          if (d(y, u) == a && d(u, v) == a && d(y, v) != a && d(x, v) == d(y, v) && d(x, u) == d(y, v)) {
            return false;
          }
        }
  return true;
}

SymbolicMap map_from_code(std::size_t n, std::size_t k, std::uint64_t code) {
  return SymbolicMap::from_pairs(n, k, [&](Vertex, Vertex) {
    const auto s = static_cast<Symbol>(code % k);
    code /= k;
    return s;
  });
}

SymbolicMap u3_map() {
  // path 0-1-2-3 on symbol 0, the remaining pairs on symbol 1
  return SymbolicMap::from_pairs(4, 2, [](Vertex x, Vertex y) -> Symbol { return y == x + 1 ? 0 : 1; });
}

void expect_represents(const SymbolTree& t, const SymbolicMap& d) {
  ASSERT_EQ(t.leaf_count(), d.order());
  for (Vertex x = 0; x < d.order(); ++x) {
    EXPECT_EQ(t.lca_label(x, x), std::nullopt);
    for (Vertex y = 0; y < d.order(); ++y) {
      if (x != y) {
        EXPECT_EQ(t.lca_label(x, y), d(x, y)) << x << "," << y;
      }
    }
  }
}

TEST(SymbolicMap, ConstructionInvariants) {
  EXPECT_THROW(SymbolicMap(2, 1, {SymbolicMap::kEmpty, 0, 1, SymbolicMap::kEmpty}), Error);  // asymmetric/range
  EXPECT_THROW(SymbolicMap(2, 2, {0, 0, 0, SymbolicMap::kEmpty}), Error);                    // diagonal
  EXPECT_THROW(SymbolicMap(2, 2, {SymbolicMap::kEmpty, SymbolicMap::kEmpty, SymbolicMap::kEmpty,
                                  SymbolicMap::kEmpty}),
               Error);  // off-diagonal empty
  EXPECT_THROW(SymbolicMap(2, 2, {SymbolicMap::kEmpty, 0, 1, SymbolicMap::kEmpty}), Error);  // asymmetric
  EXPECT_THROW(SymbolicMap(2, 2, {SymbolicMap::kEmpty, 0}), Error);                          // size
  const SymbolicMap ok(2, 2, {SymbolicMap::kEmpty, 1, 1, SymbolicMap::kEmpty});
  EXPECT_EQ(ok.at(0, 0), std::nullopt);
  EXPECT_EQ(ok.at(0, 1), std::optional<Symbol>(1));
}

TEST(CheckAxioms, ConstantMapIsUltrametric) {
  const auto d = SymbolicMap::from_pairs(6, 1, [](Vertex, Vertex) { return Symbol{0}; });
  EXPECT_EQ(check_axioms(d), std::nullopt);
  EXPECT_EQ(check_via_graphs(d), std::nullopt);
}

TEST(CheckAxioms, U3PatternReported) {
  const auto v = check_axioms(u3_map());
  ASSERT_TRUE(v);
  EXPECT_EQ(v->axiom, Axiom::U3);
  EXPECT_EQ(v->witness, (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_TRUE(violation_holds(u3_map(), *v));
}

TEST(CheckAxioms, U2ReportedWithSmallestTriple) {
  const auto d = SymbolicMap::from_pairs(4, 3, [](Vertex x, Vertex y) -> Symbol {
    if (x == 1 && y == 2) return 1;
    if (x == 1 && y == 3) return 2;
    return 0;
  });
  // triples {0,1,2},{0,1,3} are fine; {1,2,3} has pairs 12=1, 13=2, 23=0
  const auto v = check_axioms(d);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->axiom, Axiom::U2);
  EXPECT_EQ(v->witness, (std::vector<Vertex>{1, 2, 3}));
  EXPECT_TRUE(violation_holds(d, *v));
  const auto w = check_via_graphs(d);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->axiom, Axiom::U2Prime);
}

TEST(CheckViaGraphs, U3PatternMap) {
  const auto v = check_via_graphs(u3_map());
  ASSERT_TRUE(v);
  EXPECT_TRUE(v->axiom == Axiom::U3Prime || v->axiom == Axiom::U2Prime);
  EXPECT_TRUE(violation_holds(u3_map(), *v));
}

TEST(CheckAxioms, RandomTreesGiveUltrametrics) {
  Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    const std::size_t k = 2 + rng() % 4;
    const SymbolTree t = random_symbol_tree(rng, 1 + rng() % 9, k);
    const SymbolicMap d = tree_map(t, k);
    EXPECT_EQ(check_axioms(d), std::nullopt);
    EXPECT_EQ(check_via_graphs(d), std::nullopt);
  }
}

TEST(CheckAxioms, ExhaustiveSmallMapsAgreeWithNaiveOracle) {
  for (std::uint64_t code = 0; code < 729; ++code) {  // n=4, k=3
    const SymbolicMap d = map_from_code(4, 3, code);
    const auto a = check_axioms(d);
    const auto b = check_via_graphs(d);
    EXPECT_EQ(!a, naive_ultrametric(d)) << code;
    EXPECT_EQ(!a, !b) << code;
    if (a) {
      EXPECT_TRUE(violation_holds(d, *a));
    }
    if (b) {
      EXPECT_TRUE(violation_holds(d, *b));
    }
  }
  for (std::uint64_t code = 0; code < 1024; ++code) {  // n=5, k=2
    const SymbolicMap d = map_from_code(5, 2, code);
    EXPECT_EQ(!check_axioms(d), naive_ultrametric(d)) << code;
    EXPECT_EQ(!check_axioms(d), !check_via_graphs(d)) << code;
  }
}

TEST(CheckAxioms, RandomMapsCheckersAgree) {
  Rng rng(37);
  for (int i = 0; i < 2000; ++i) {
    const SymbolicMap d = random_map(rng, 6, 3);
    const auto a = check_axioms(d);
    EXPECT_EQ(!a, !check_via_graphs(d));
    EXPECT_EQ(!a, naive_ultrametric(d));
  }
}

TEST(ColorGraph, Examples) {
  const auto d = SymbolicMap::from_pairs(5, 2, [](Vertex, Vertex) { return Symbol{0}; });
  EXPECT_EQ(color_graph(d, 0), complete_graph(5));
  EXPECT_EQ(color_graph(d, 1).size(), 0u);
  EXPECT_THROW(color_graph(d, 2), Error);
}

TEST(ColorGraph, PartitionsAllPairs) {
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    const SymbolicMap d = random_map(rng, 7, 4);
    std::size_t total = 0;
    for (Symbol m = 0; m < 4; ++m) {
      const Graph gm = color_graph(d, m);
      total += gm.size();
      for (const Edge& e : gm.edges()) EXPECT_EQ(d(e.u, e.v), m);
    }
    EXPECT_EQ(total, 21u);
  }
}

TEST(BuildRepresentation, ConstantMapIsStar) {
  const auto d = SymbolicMap::from_pairs(5, 3, [](Vertex, Vertex) { return Symbol{2}; });
  const SymbolTree t = build_representation(d);
  EXPECT_EQ(t.node(0).label, std::optional<Symbol>(2));
  EXPECT_EQ(t.node(0).children.size(), 5u);
  EXPECT_EQ(to_newick(t), "(0,1,2,3,4)s2;");
}

TEST(BuildRepresentation, ReproducesRandomTreeMaps) {
  Rng rng(43);
  for (int i = 0; i < 500; ++i) {
    const std::size_t k = 2 + rng() % 4;
    const SymbolTree t = random_symbol_tree(rng, 1 + rng() % 12, k);
    const SymbolicMap d = tree_map(t, k);
    const SymbolTree r = build_representation(d);
    expect_represents(r, d);
    // collapsed trees realizing the same map coincide
    EXPECT_EQ(r, t);
  }
}

TEST(BuildRepresentation, CographMapGivesCotree) {
  Rng rng(47);
  for (int i = 0; i < 100; ++i) {
    const Cotree c = random_cotree(rng, 2 + rng() % 12);
    const Graph g = cotree_to_graph(c);
    const SymbolTree t = build_representation(delta_from_graph(g));
    const Cotree back = t.relabel([](Symbol s) { return s == kEdgeSymbol ? CoLabel::Join : CoLabel::Union; });
    EXPECT_EQ(back, c);
  }
}

TEST(BuildRepresentation, Rejections) {
  try {
    build_representation(u3_map());
    FAIL();
  } catch (const NotUltrametric& e) {
    EXPECT_EQ(e.violation().axiom, Axiom::U3);
  }
  EXPECT_THROW(build_representation(SymbolicMap(0, 1, {})), Error);
  const SymbolTree single = build_representation(SymbolicMap(1, 1, {SymbolicMap::kEmpty}));
  EXPECT_EQ(to_newick(single), "0;");
}

TEST(DeltaFromGraph, Examples) {
  EXPECT_EQ(check_axioms(delta_from_graph(complete_graph(3))), std::nullopt);
  EXPECT_TRUE(check_axioms(delta_from_graph(path_graph(4))));
  EXPECT_EQ(check_via_graphs(delta_from_graph(cycle_graph(4))), std::nullopt);
}

TEST(DeltaFromGraph, ExhaustiveOnFiveVertices) {
  for (std::uint64_t code = 0; code < 1024; ++code) {
    const Graph g = graph_from_code(5, code);
    EXPECT_EQ(!check_axioms(delta_from_graph(g)), closure_cograph(g)) << code;
  }
}

TEST(SeparatingDelta, P4ScreensBell6) {
  const auto r = search_separating_delta(path_graph(4), 6);
  EXPECT_FALSE(r.map);
  EXPECT_EQ(bell(6), 203u);
  EXPECT_EQ(r.partitions_screened, bell(6));
}

TEST(SeparatingDelta, C4AndC5) {
  const auto c4 = search_separating_delta(cycle_graph(4), 6);
  ASSERT_TRUE(c4.map);
  EXPECT_EQ(check_axioms(*c4.map), std::nullopt);
  const auto c5 = search_separating_delta(cycle_graph(5), 10);
  EXPECT_FALSE(c5.map);
  EXPECT_EQ(c5.partitions_screened, bell(10));
}

TEST(SeparatingDelta, FoundMapSeparates) {
  Rng rng(53);
  for (int i = 0; i < 30; ++i) {
    const Graph g = random_graph(rng, 2 + rng() % 3, 0.5);
    const auto r = search_separating_delta(g, 6);
    EXPECT_EQ(r.map.has_value(), closure_cograph(g));
    if (!r.map) continue;
    EXPECT_EQ(check_axioms(*r.map), std::nullopt);
    for (const Edge& e : g.edges()) {
      for (Vertex x = 0; x < g.order(); ++x)
        for (Vertex y = x + 1; y < g.order(); ++y) {
          if (!g.adjacent(x, y)) {
            EXPECT_NE((*r.map)(e.u, e.v), (*r.map)(x, y));
          }
        }
    }
  }
}

TEST(SeparatingDelta, TooLargeRejected) {
  EXPECT_THROW(search_separating_delta(complete_graph(7), 3), Error);
}

TEST(SymbolTreeNewick, RoundTrip) {
  Rng rng(59);
  for (int i = 0; i < 100; ++i) {
    const SymbolTree t = random_symbol_tree(rng, 1 + rng() % 12, 5);
    const std::string text = to_newick(t);
    EXPECT_EQ(parse_symbol_tree(text), t);
    EXPECT_EQ(to_newick(parse_symbol_tree(text)), text);
  }
  EXPECT_THROW(parse_symbol_tree("(0,1)x;"), Error);
}

}  // namespace
