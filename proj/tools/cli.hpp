#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cograph/cograph.hpp"

namespace cograph::cli {

// Exit statuses; the verdict is carried by these alone.
enum Exit : int { kPositive = 0, kNegative = 1, kUsage = 2, kTimeout = 3 };

namespace detail {

struct Report {
  json command = json::array();
  std::string verdict;
  json payload = json::object();
  std::uint64_t nodes = 0;
};

inline std::string slurp(const std::string& path, std::istream& in) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

inline bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
  }
  return false;
}

// Edge-list text, a graph JSON object, or a report of another subcommand
// that carries a "graph" payload (so subcommands can be piped).
inline Graph load_graph(const std::string& path, std::istream& in) {
  const std::string text = slurp(path, in);
  if (!looks_like_json(text)) return parse_edge_list(text);
  const json j = json::parse(text);
  if (j.contains("payload") && j["payload"].contains("graph")) return graph_from_json(j["payload"]["graph"]);
  if (j.contains("graph")) return graph_from_json(j["graph"]);
  return graph_from_json(j);
}

// A decomposition JSON document, or a report that carries one.
inline Decomposition load_decomposition(const Graph& host, const std::string& path, std::istream& in) {
  const json j = json::parse(slurp(path, in));
  if (j.contains("payload") && j["payload"].contains("decomposition")) {
    return decomposition_from_json(host, j["payload"]["decomposition"]);
  }
  if (j.contains("decomposition")) return decomposition_from_json(host, j["decomposition"]);
  return decomposition_from_json(host, j);
}

inline NaeFormula load_formula(const std::string& path, std::istream& in) {
  return parse_formula(slurp(path, in));
}

inline json roles_to_json(const GadgetRoles& r) {
  json lits = json::array();
  for (const auto& l : r.literals) lits.push_back(l);
  json clauses = json::array();
  for (const auto& c : r.clauses) {
    clauses.push_back({{"occurrence", c.occurrence}, {"triangle", c.triangle}});
  }
  json named = json::object();
  for (const auto& [name, v] : r.named()) named[name] = v;
  json out = {{"literals", std::move(lits)}, {"clauses", std::move(clauses)}, {"named", std::move(named)}};
  if (r.pendant) out["pendant"] = {{"nine", r.pendant->nine}, {"leaves", r.pendant->leaves}};
  return out;
}

inline json violation_to_json(const AxiomViolation& v) {
  json out = {{"axiom", std::string(axiom_name(v.axiom))}, {"witness", v.witness}};
  if (v.symbol) out["symbol"] = *v.symbol;
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << content;
}

}  // namespace detail

// Runs one invocation. Writes exactly one JSON document to `out`, human
// readable notes to `err`, and returns the exit status.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  using detail::Report;
  const auto start = std::chrono::steady_clock::now();
  Report report;
  for (const auto& a : args) report.command.push_back(a);

  auto emit = [&](int status) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    json doc = {{"command", report.command},
                {"verdict", report.verdict},
                {"payload", report.payload},
                {"statistics", {{"nodes_explored", report.nodes}, {"elapsed_ms", ms}}}};
    out << doc.dump(2) << '\n';
    return status;
  };

  CLI::App app{"cograph recognition, symbolic ultrametrics and cograph edge decompositions", "cograph"};
  app.set_help_flag("-h,--help");
  app.require_subcommand(1);

  std::string input = "-";
  std::string second_input;

  auto* recognize_cmd = app.add_subcommand("recognize", "decide whether a graph is a cograph");
  recognize_cmd->add_option("graph", input, "edge-list file or '-'")->required();

  auto* cotree_cmd = app.add_subcommand("cotree", "expand a Newick cotree into its graph");
  std::vector<Vertex> lca_pair;
  cotree_cmd->add_option("tree", input, "Newick cotree file or '-'")->required();
  cotree_cmd->add_option("--lca", lca_pair, "report the lca label of two vertices")->expected(2);

  auto* ultra_cmd = app.add_subcommand("ultrametric", "symbolic ultrametric tools");
  ultra_cmd->require_subcommand(1);
  auto* check_cmd = ultra_cmd->add_subcommand("check", "check axioms U0-U3");
  bool via_graphs = false;
  check_cmd->add_option("map", input, "symbolic map file or '-'")->required();
  check_cmd->add_flag("--via-graphs", via_graphs, "use the color-graph characterization");
  auto* represent_cmd = ultra_cmd->add_subcommand("represent", "build a symbolic representation");
  represent_cmd->add_option("map", input, "symbolic map file or '-'")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "cograph edge decomposition");
  std::string mode_str = "partition";
  std::string strategy = "exact";
  std::size_t k_max = 3;
  std::uint64_t budget = 0;
  unsigned jobs = 1;
  decompose_cmd->add_option("graph", input, "edge-list file or '-'")->required();
  decompose_cmd->add_option("--mode", mode_str, "partition|cover")
      ->check(CLI::IsMember({"partition", "cover"}));
  decompose_cmd->add_option("--strategy", strategy, "vizing|greedy|exact")
      ->check(CLI::IsMember({"vizing", "greedy", "exact"}));
  decompose_cmd->add_option("--k-max", k_max, "largest k tried by the exact solver")
      ->check(CLI::Range(std::size_t{1}, kMaxSolverClasses));
  decompose_cmd->add_option("--budget-nodes", budget, "search node budget (0 = unlimited)");
  decompose_cmd->add_option("--jobs", jobs, "solver worker threads")->check(CLI::Range(1U, 256U));

  auto* coarsen_cmd = app.add_subcommand("coarsen", "coarsen a valid decomposition");
  coarsen_cmd->add_option("graph", input, "host graph")->required();
  coarsen_cmd->add_option("decomposition", second_input, "decomposition JSON")->required();

  auto* gadget_cmd = app.add_subcommand("gadget", "reduction gadget graphs");
  gadget_cmd->require_subcommand(1);
  std::string edge_list_out, roles_out;
  for (auto* g : {gadget_cmd}) {
    g->add_option("--edge-list", edge_list_out, "also write the edge list to this file");
    g->add_option("--roles", roles_out, "also write the role map JSON to this file");
  }
  auto* g_literal = gadget_cmd->add_subcommand("literal", "literal graph");
  auto* g_extended = gadget_cmd->add_subcommand("extended", "extended literal graph");
  auto* g_clause = gadget_cmd->add_subcommand("clause", "clause gadget");
  auto* g_formula = gadget_cmd->add_subcommand("formula", "formula graph");
  g_formula->add_option("formula", input, "formula file or '-'")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "translate NAE 3-SAT certificates");
  reduce_cmd->require_subcommand(1);
  auto* to_graph_cmd = reduce_cmd->add_subcommand("to-graph", "assignment -> 2-partition");
  std::string assignment_str;
  to_graph_cmd->add_option("formula", input, "formula file or '-'")->required();
  to_graph_cmd->add_option("--assignment", assignment_str,
                           "0/1 string, one digit per variable (default: first NAE solution)");
  auto* from_partition_cmd = reduce_cmd->add_subcommand("from-partition", "2-partition -> assignment");
  from_partition_cmd->add_option("formula", input, "formula file")->required();
  from_partition_cmd->add_option("decomposition", second_input, "decomposition JSON")->required();

  auto* hypercube_cmd = app.add_subcommand("hypercube", "the d-dimensional hypercube");
  std::size_t dim = 0;
  bool layers = false;
  hypercube_cmd->add_option("dimension", dim, "d")->required()->check(CLI::Range(0, 14));
  hypercube_cmd->add_flag("--layers", layers, "also emit the square-layer partition (even d)");

  auto* p4s_cmd = app.add_subcommand("p4s", "list induced P4s");
  bool constraints = false;
  p4s_cmd->add_option("graph", input, "edge-list file or '-'")->required();
  p4s_cmd->add_flag("--constraints", constraints, "list all length-3 paths with their chords");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPositive;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    report.verdict = "error";
    report.payload = {{"error", e.what()}};
    return emit(kUsage);
  }

  try {
    if (*recognize_cmd) {
      const Graph g = detail::load_graph(input, in);
      auto r = recognize(g);
      if (auto* t = std::get_if<Cotree>(&r)) {
        report.verdict = "cograph";
        report.payload = {{"cotree", to_newick(*t)}};
        err << "cograph on " << g.order() << " vertices\n";
        return emit(kPositive);
      }
      const auto& w = std::get<P4Witness>(r);
      report.verdict = "not_cograph";
      report.payload = {{"witness", witness_to_json(w)}};
      err << "not a cograph: induced P4 " << w.a << "-" << w.b << "-" << w.c << "-" << w.d << '\n';
      return emit(kNegative);
    }

    if (*cotree_cmd) {
      const Cotree t = parse_cotree(detail::slurp(input, in));
      const Graph g = cotree_to_graph(t);
      report.verdict = "ok";
      report.payload = {{"cotree", to_newick(t)}, {"graph", graph_to_json(g)}, {"edge_list", to_edge_list(g)}};
      if (lca_pair.size() == 2) {
        const auto label = lca_label(t, lca_pair[0], lca_pair[1]);
        report.payload["lca"] = label ? json(static_cast<int>(*label)) : json(nullptr);
      }
      return emit(kPositive);
    }

    if (*check_cmd) {
      const SymbolicMap d = parse_symbolic_map(detail::slurp(input, in));
      const auto v = via_graphs ? check_via_graphs(d) : check_axioms(d);
      if (!v) {
        report.verdict = "ultrametric";
        return emit(kPositive);
      }
      report.verdict = "not_ultrametric";
      report.payload = {{"violation", detail::violation_to_json(*v)}};
      err << "axiom " << axiom_name(v->axiom) << " violated\n";
      return emit(kNegative);
    }

    if (*represent_cmd) {
      const SymbolicMap d = parse_symbolic_map(detail::slurp(input, in));
      if (auto v = check_axioms(d)) {
        report.verdict = "not_ultrametric";
        report.payload = {{"violation", detail::violation_to_json(*v)}};
        return emit(kNegative);
      }
      report.verdict = "ok";
      report.payload = {{"tree", to_newick(build_representation(d))}};
      return emit(kPositive);
    }

    if (*decompose_cmd) {
      const Graph g = detail::load_graph(input, in);
      const auto mode = parse_mode(mode_str);
      report.payload = {{"strategy", strategy}};
      if (strategy == "vizing" || strategy == "greedy") {
        Decomposition d = vizing_partition(g);
        d = Decomposition(g, std::vector<std::vector<Edge>>(d.classes().begin(), d.classes().end()), mode);
        report.payload["max_degree"] = max_degree(g);
        if (strategy == "greedy") {
          d = merge_pairs(d);
          const bool certify = d.k() <= kMaxSubsetScanClasses;
          if (certify) d = coarsen(d);
          report.payload["coarsest"] = certify;
        }
        report.verdict = "found";
        report.payload["k"] = d.k();
        report.payload["decomposition"] = decomposition_to_json(d);
        err << strategy << ": " << d.k() << " classes\n";
        return emit(kPositive);
      }
      SolverOptions opts;
      opts.mode = mode;
      opts.k_max = k_max;
      opts.budget_nodes = budget;
      opts.jobs = jobs;
      const SolveResult r = exact_min_decomposition(g, opts);
      report.nodes = r.nodes;
      report.verdict = std::string(status_name(r.status));
      report.payload["k_max"] = r.k_max;
      report.payload["lower_bound"] = r.lower_bound;
      if (r.upper_bound) report.payload["upper_bound"] = *r.upper_bound;
      switch (r.status) {
        case SolveStatus::Found:
          report.payload["k"] = r.decomposition->k();
          report.payload["decomposition"] = decomposition_to_json(*r.decomposition);
          err << "minimum k = " << r.decomposition->k() << '\n';
          return emit(kPositive);
        case SolveStatus::Infeasible:
          err << "no " << mode_name(mode) << " with k <= " << k_max << '\n';
          return emit(kNegative);
        case SolveStatus::Timeout:
          err << "node budget exhausted while searching k = " << r.lower_bound << '\n';
          return emit(kTimeout);
      }
    }

    if (*coarsen_cmd) {
      const Graph g = detail::load_graph(input, in);
      const Decomposition d = detail::load_decomposition(g, second_input, in);
      const Decomposition c = coarsen(d);
      report.verdict = "ok";
      report.payload = {{"k", c.k()}, {"decomposition", decomposition_to_json(c)}};
      return emit(kPositive);
    }

    if (*gadget_cmd) {
      GadgetGraph gg;
      if (*g_literal) gg = literal_graph();
      if (*g_extended) gg = extended_literal_graph();
      if (*g_clause) gg = clause_gadget();
      if (*g_formula) gg = build_formula_graph(detail::load_formula(input, in));
      const json roles = detail::roles_to_json(gg.roles);
      if (!edge_list_out.empty()) detail::write_file(edge_list_out, to_edge_list(gg.graph));
      if (!roles_out.empty()) detail::write_file(roles_out, roles.dump(2) + "\n");
      report.verdict = "ok";
      report.payload = {{"graph", graph_to_json(gg.graph)},
                        {"edge_list", to_edge_list(gg.graph)},
                        {"roles", roles}};
      err << "gadget with " << gg.graph.order() << " vertices, " << gg.graph.size() << " edges\n";
      return emit(kPositive);
    }

    if (*to_graph_cmd) {
      const NaeFormula f = detail::load_formula(input, in);
      Assignment a;
      if (!assignment_str.empty()) {
        if (assignment_str.size() != f.num_vars()) {
          throw Error("--assignment needs one digit per variable (" + std::to_string(f.num_vars()) + ")");
        }
        for (char c : assignment_str) {
          if (c != '0' && c != '1') throw Error("--assignment may only contain 0 and 1");
          a.push_back(c == '1');
        }
        if (!eval_nae(f, a)) {
          report.verdict = "not_nae";
          err << "assignment violates a clause\n";
          return emit(kNegative);
        }
      } else {
        const auto all = nae_solutions(f);
        if (all.empty()) {
          report.verdict = "unsatisfiable";
          err << "formula has no NAE assignment\n";
          return emit(kNegative);
        }
        a = all.front();
      }
      const GadgetGraph gg = build_formula_graph(f);
      const Decomposition d = partition_from_assignment(f, a);
      report.verdict = "ok";
      report.payload = {{"assignment", a},
                        {"graph", graph_to_json(gg.graph)},
                        {"roles", detail::roles_to_json(gg.roles)},
                        {"decomposition", decomposition_to_json(d)}};
      return emit(kPositive);
    }

    if (*from_partition_cmd) {
      const NaeFormula f = detail::load_formula(input, in);
      const Graph host = build_formula_graph(f).graph;
      const Decomposition d = detail::load_decomposition(host, second_input, in);
      try {
        const Assignment a = assignment_from_partition(f, d);
        report.verdict = "ok";
        report.payload = {{"assignment", a}};
        return emit(kPositive);
      } catch (const Error& e) {
        report.verdict = "extraction_failed";
        report.payload = {{"reason", e.what()}};
        err << "extraction failed: " << e.what() << '\n';
        return emit(kNegative);
      }
    }

    if (*hypercube_cmd) {
      const Graph q = hypercube(dim);
      report.verdict = "ok";
      report.payload = {{"graph", graph_to_json(q)}, {"edge_list", to_edge_list(q)}};
      if (layers) {
        if (dim == 0 || dim % 2 != 0) throw Error("--layers needs a positive even dimension");
        report.payload["decomposition"] = decomposition_to_json(layers_partition(dim / 2));
      }
      return emit(kPositive);
    }

    if (*p4s_cmd) {
      const Graph g = detail::load_graph(input, in);
      report.verdict = "ok";
      if (constraints) {
        json list = json::array();
        for (const auto& c : p4_constraints(g)) {
          json chords = json::array();
          for (auto e : c.chord_edges) chords.push_back(edge_to_json(g.edges()[e]));
          list.push_back({{"path", witness_to_json(c.path)}, {"chords", std::move(chords)}});
        }
        report.payload = {{"count", list.size()}, {"constraints", std::move(list)}};
      } else {
        json list = json::array();
        for (const auto& w : enumerate_induced_p4(g)) list.push_back(witness_to_json(w));
        report.payload = {{"count", list.size()}, {"witnesses", std::move(list)}};
      }
      return emit(kPositive);
    }
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    report.verdict = "error";
    report.payload = {{"error", std::string("malformed JSON: ") + e.what()}};
    return emit(kUsage);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    report.verdict = "error";
    report.payload = {{"error", e.what()}};
    return emit(kUsage);
  }
  report.verdict = "error";
  return emit(kUsage);
}

}  // namespace cograph::cli
