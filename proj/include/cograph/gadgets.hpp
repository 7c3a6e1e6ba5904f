#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cograph/decomposition.hpp"
#include "cograph/graph.hpp"
#include "cograph/text_io.hpp"

namespace cograph {

// Monotone NAE 3-SAT instance: every clause names three distinct,
// un-negated variables.
class NaeFormula {
 public:
  using Clause = std::array<std::uint32_t, 3>;

  NaeFormula(std::size_t num_vars, std::vector<Clause> clauses)
      : num_vars_(num_vars), clauses_(std::move(clauses)) {
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
      const Clause& c = clauses_[i];
      for (auto v : c) {
        if (v >= num_vars_) {
          throw Error("clause " + std::to_string(i) + " references variable " + std::to_string(v) +
                      " >= " + std::to_string(num_vars_));
        }
      }
      if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2]) {
        throw Error("clause " + std::to_string(i) + " repeats a variable");
      }
    }
  }

  std::size_t num_vars() const noexcept { return num_vars_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  bool operator==(const NaeFormula&) const = default;

 private:
  std::size_t num_vars_;
  std::vector<Clause> clauses_;
};

using Assignment = std::vector<bool>;

inline bool eval_nae(const NaeFormula& f, const Assignment& a) {
  if (a.size() != f.num_vars()) {
    throw Error("assignment has " + std::to_string(a.size()) + " values for " +
                std::to_string(f.num_vars()) + " variables");
  }
  for (const auto& c : f.clauses()) {
    const bool x = a[c[0]], y = a[c[1]], z = a[c[2]];
    if (x == y && y == z) return false;
  }
  return true;
}

// All NAE-satisfying assignments, variable 0 as least significant bit of
// the enumeration counter.
inline std::vector<Assignment> nae_solutions(const NaeFormula& f) {
  if (f.num_vars() > 24) throw Error("brute-force NAE enumeration limited to 24 variables");
  std::vector<Assignment> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars()); ++bits) {
    Assignment a(f.num_vars());
    for (std::size_t v = 0; v < f.num_vars(); ++v) a[v] = (bits >> v) & 1U;
    if (eval_nae(f, a)) out.push_back(std::move(a));
  }
  return out;
}

// The literal graph: triangle 0-1-2 with the three 4-cycles 0-3-4-1,
// 1-5-6-2 and 2-7-8-0 hanging off its sides.
inline constexpr std::array<std::array<Vertex, 2>, 12> kLiteralEdges{{
    {0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {1, 4}, {1, 5}, {5, 6}, {2, 6}, {2, 7}, {7, 8}, {0, 8}}};

// In the unique 2-partition these share a class with the triangle ...
inline constexpr std::array<std::array<Vertex, 2>, 6> kLiteralTriangleSide{{
    {0, 1}, {1, 2}, {0, 2}, {3, 4}, {5, 6}, {7, 8}}};
// ... and these form the other class.
inline constexpr std::array<std::array<Vertex, 2>, 6> kLiteralSpokeSide{{
    {0, 3}, {1, 4}, {1, 5}, {2, 6}, {2, 7}, {0, 8}}};

inline constexpr Vertex kLiteralHub = 6;  // where clause occurrences attach

struct ClauseRoles {
  std::array<Vertex, 3> occurrence{};  // the per-occurrence "9" vertex of each literal
  std::array<Vertex, 3> triangle{};    // a, b, c
};

struct PendantRoles {
  Vertex nine = 0;
  std::array<Vertex, 2> leaves{};
};

struct GadgetRoles {
  std::vector<std::array<Vertex, 9>> literals;  // by variable
  std::vector<ClauseRoles> clauses;
  std::optional<PendantRoles> pendant;          // extended literal graph only

  // Structural name -> vertex, e.g. "x3.6", "C0.9_2", "C0.b".
  std::vector<std::pair<std::string, Vertex>> named() const {
    std::vector<std::pair<std::string, Vertex>> out;
    for (std::size_t x = 0; x < literals.size(); ++x) {
      for (std::size_t j = 0; j < 9; ++j) {
        out.emplace_back("x" + std::to_string(x) + "." + std::to_string(j), literals[x][j]);
      }
    }
    if (pendant) {
      out.emplace_back("x0.9", pendant->nine);
      out.emplace_back("x0.10", pendant->leaves[0]);
      out.emplace_back("x0.11", pendant->leaves[1]);
    }
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      const std::string p = "C" + std::to_string(i) + ".";
      for (std::size_t j = 0; j < 3; ++j) {
        out.emplace_back(p + "9_" + std::to_string(j + 1), clauses[i].occurrence[j]);
      }
      out.emplace_back(p + "a", clauses[i].triangle[0]);
      out.emplace_back(p + "b", clauses[i].triangle[1]);
      out.emplace_back(p + "c", clauses[i].triangle[2]);
    }
    return out;
  }
};

struct GadgetGraph {
  Graph graph;
  GadgetRoles roles;
};

namespace detail {

inline void add_literal(std::vector<Edge>& edges, const std::array<Vertex, 9>& at) {
  for (auto [x, y] : kLiteralEdges) edges.emplace_back(at[x], at[y]);
}

inline std::array<Vertex, 9> block_of_nine(Vertex base) {
  std::array<Vertex, 9> at{};
  for (Vertex j = 0; j < 9; ++j) at[j] = base + j;
  return at;
}

// Clause triangle vertices each occurrence attaches to, by position:
// first -> {a, c}, second -> {a, b}, third -> {c, b}.
inline constexpr std::array<std::array<std::size_t, 2>, 3> kAttach{{{0, 2}, {0, 1}, {2, 1}}};

}  // namespace detail

inline GadgetGraph literal_graph() {
  GadgetGraph out;
  out.roles.literals.push_back(detail::block_of_nine(0));
  std::vector<Edge> edges;
  detail::add_literal(edges, out.roles.literals[0]);
  out.graph = Graph(9, std::move(edges));
  return out;
}

// Literal graph plus the pendant edge 6-9 and the edges 9-10, 9-11.
inline GadgetGraph extended_literal_graph() {
  GadgetGraph out;
  out.roles.literals.push_back(detail::block_of_nine(0));
  out.roles.pendant = PendantRoles{9, {10, 11}};
  std::vector<Edge> edges;
  detail::add_literal(edges, out.roles.literals[0]);
  edges.emplace_back(kLiteralHub, 9);
  edges.emplace_back(9, 10);
  edges.emplace_back(9, 11);
  out.graph = Graph(12, std::move(edges));
  return out;
}

// Vertex layout: literal graph of variable x at 9x..9x+8, then per clause
// i a block of six at 9v + 6i: the three occurrence vertices followed by
// the triangle a, b, c.
inline GadgetGraph build_formula_graph(const NaeFormula& f) {
  GadgetGraph out;
  const auto v = static_cast<Vertex>(f.num_vars());
  std::vector<Edge> edges;
  for (Vertex x = 0; x < v; ++x) {
    out.roles.literals.push_back(detail::block_of_nine(9 * x));
    detail::add_literal(edges, out.roles.literals.back());
  }
  for (std::size_t i = 0; i < f.clauses().size(); ++i) {
    const Vertex base = 9 * v + 6 * static_cast<Vertex>(i);
    ClauseRoles cr;
    for (Vertex j = 0; j < 3; ++j) {
      cr.occurrence[j] = base + j;
      cr.triangle[j] = base + 3 + j;
    }
    const auto& t = cr.triangle;
    edges.emplace_back(t[0], t[1]);
    edges.emplace_back(t[1], t[2]);
    edges.emplace_back(t[0], t[2]);
    for (std::size_t j = 0; j < 3; ++j) {
      const Vertex hub = out.roles.literals[f.clauses()[i][j]][kLiteralHub];
      const Vertex nine = cr.occurrence[j];
      edges.emplace_back(hub, nine);
      for (std::size_t side : detail::kAttach[j]) edges.emplace_back(nine, t[side]);
    }
    out.roles.clauses.push_back(cr);
  }
  out.graph = Graph(9 * f.num_vars() + 6 * f.clauses().size(), std::move(edges));
  return out;
}

// Single clause over three fresh variables.
inline GadgetGraph clause_gadget() { return build_formula_graph(NaeFormula(3, {{0, 1, 2}})); }

// Two-partition certificate of the formula graph for an NAE-satisfying
// assignment. Class 0 holds the triangles of true variables, class 1 those
// of false ones. Within a clause the triangle edge between the minority
// literal's two attachment vertices goes opposite to that literal's class
// and the other two triangle edges go with it. The result is re-validated.
inline Decomposition partition_from_assignment(const NaeFormula& f, const Assignment& a) {
  if (!eval_nae(f, a)) throw Error("assignment does not satisfy the formula (NAE)");
  const GadgetGraph gg = build_formula_graph(f);
  std::array<std::vector<Edge>, 2> cls;
  auto side = [&](std::uint32_t var) -> std::size_t { return a[var] ? 0 : 1; };

  for (std::uint32_t x = 0; x < f.num_vars(); ++x) {
    const auto& at = gg.roles.literals[x];
    for (auto [p, q] : kLiteralTriangleSide) cls[side(x)].emplace_back(at[p], at[q]);
    for (auto [p, q] : kLiteralSpokeSide) cls[1 - side(x)].emplace_back(at[p], at[q]);
  }
  for (std::size_t i = 0; i < f.clauses().size(); ++i) {
    const auto& clause = f.clauses()[i];
    const auto& cr = gg.roles.clauses[i];
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t s = side(clause[j]);
      const Vertex nine = cr.occurrence[j];
      cls[s].emplace_back(gg.roles.literals[clause[j]][kLiteralHub], nine);
      for (std::size_t t : detail::kAttach[j]) cls[1 - s].emplace_back(nine, cr.triangle[t]);
    }
    std::size_t minority = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (side(clause[j]) != side(clause[(j + 1) % 3]) &&
          side(clause[j]) != side(clause[(j + 2) % 3])) {
        minority = j;
      }
    }
    const std::size_t ms = side(clause[minority]);
    const Edge opposite(cr.triangle[detail::kAttach[minority][0]],
                        cr.triangle[detail::kAttach[minority][1]]);
    const auto& t = cr.triangle;
    for (const Edge e : {Edge(t[0], t[1]), Edge(t[1], t[2]), Edge(t[0], t[2])}) {
      cls[e == opposite ? 1 - ms : ms].push_back(e);
    }
  }
  Decomposition d(gg.graph, {std::move(cls[0]), std::move(cls[1])}, DecompositionMode::Partition);
  if (auto v = validate(d); !v.ok()) {
    throw Error("partition_from_assignment built an invalid partition: " + v.describe());
  }
  return d;
}

// Reads each variable's triangle: class 0 means true, class 1 false.
inline Assignment assignment_from_partition(const NaeFormula& f, const Decomposition& d) {
  const GadgetGraph gg = build_formula_graph(f);
  if (!(d.host() == gg.graph)) throw Error("decomposition is not over the formula graph");
  if (d.k() != 2) throw Error("expected a 2-class decomposition, got k=" + std::to_string(d.k()));
  if (auto v = validate(d); !v.ok()) throw Error("decomposition is not valid: " + v.describe());
  const auto member = d.membership();
  Assignment a(f.num_vars());
  for (std::uint32_t x = 0; x < f.num_vars(); ++x) {
    const auto& at = gg.roles.literals[x];
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto [p, q] = kLiteralTriangleSide[i];
      const std::uint64_t m = member[*gg.graph.edge_index(at[p], at[q])];
      if (i > 0 && m != mask) {
        throw Error("triangle of variable " + std::to_string(x) + " is split across classes");
      }
      mask = m;
    }
    if (mask != 1 && mask != 2) {
      throw Error("triangle of variable " + std::to_string(x) + " lies in both classes");
    }
    a[x] = mask == 1;
  }
  if (!eval_nae(f, a)) throw Error("extracted assignment violates a clause");
  return a;
}

// Text format: "v c", then c lines of three 0-based variable ids.
inline NaeFormula read_formula(std::istream& in) {
  text::LineReader reader(in);
  auto header = reader.expect("header 'v c'");
  text::expect_arity(header, 2, reader.line(), "header 'v c'");
  const auto v = text::parse_count(header[0], reader.line(), "variable count");
  const auto c = text::parse_count(header[1], reader.line(), "clause count");
  std::vector<NaeFormula::Clause> clauses;
  for (std::int64_t i = 0; i < c; ++i) {
    auto tokens = reader.expect("clause line");
    text::expect_arity(tokens, 3, reader.line(), "clause of three variables");
    NaeFormula::Clause cl{};
    for (std::size_t j = 0; j < 3; ++j) {
      const auto id = text::parse_count(tokens[j], reader.line(), "variable id");
      if (id >= v) {
        throw ParseError(reader.line(), "variable " + std::to_string(id) + " out of range");
      }
      cl[j] = static_cast<std::uint32_t>(id);
    }
    if (cl[0] == cl[1] || cl[0] == cl[2] || cl[1] == cl[2]) {
      throw ParseError(reader.line(), "clause repeats a variable");
    }
    clauses.push_back(cl);
  }
  reader.expect_end();
  return NaeFormula(static_cast<std::size_t>(v), std::move(clauses));
}

inline NaeFormula parse_formula(const std::string& text) {
  std::istringstream in(text);
  return read_formula(in);
}

inline void write_formula(std::ostream& out, const NaeFormula& f) {
  out << f.num_vars() << ' ' << f.clauses().size() << '\n';
  for (const auto& c : f.clauses()) out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
}

}  // namespace cograph
