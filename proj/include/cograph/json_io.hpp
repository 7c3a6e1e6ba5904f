#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cograph/decomposition.hpp"
#include "cograph/graph.hpp"

namespace cograph {

using nlohmann::json;

inline json edge_to_json(const Edge& e) { return json::array({e.u, e.v}); }

// {"n": N, "edges": [[u,v], ...]}
inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back(edge_to_json(e));
  return {{"n", g.order()}, {"edges", std::move(edges)}};
}

inline std::vector<std::pair<std::int64_t, std::int64_t>> pairs_from_json(const json& arr,
                                                                         const std::string& where) {
  if (!arr.is_array()) throw Error(where + " must be an array of [u,v] pairs");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw Error(where + ": expected [u,v] with integer ids, got " + p.dump());
    }
    out.emplace_back(p[0].get<std::int64_t>(), p[1].get<std::int64_t>());
  }
  return out;
}

inline Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges") || !j["n"].is_number_integer()) {
    throw Error("graph JSON must be an object with integer 'n' and array 'edges'");
  }
  return build_graph(j["n"].get<std::int64_t>(), pairs_from_json(j["edges"], "graph edges"));
}

// {"mode":"partition|cover","k":K,"classes":[[[u,v],...],...]}
inline json decomposition_to_json(const Decomposition& d) {
  json classes = json::array();
  for (const auto& cls : d.classes()) {
    json c = json::array();
    for (const Edge& e : cls) c.push_back(edge_to_json(e));
    classes.push_back(std::move(c));
  }
  return {{"mode", std::string(mode_name(d.mode()))}, {"k", d.k()}, {"classes", std::move(classes)}};
}

// The host graph is not part of the document; it is supplied separately.
inline Decomposition decomposition_from_json(const Graph& host, const json& j) {
  if (!j.is_object()) throw Error("decomposition JSON must be an object");
  for (const char* key : {"mode", "k", "classes"}) {
    if (!j.contains(key)) throw Error(std::string("decomposition JSON lacks '") + key + "'");
  }
  if (!j["mode"].is_string()) throw Error("decomposition 'mode' must be a string");
  if (!j["k"].is_number_integer()) throw Error("decomposition 'k' must be an integer");
  const auto mode = parse_mode(j["mode"].get<std::string>());
  const auto& arr = j["classes"];
  if (!arr.is_array()) throw Error("decomposition 'classes' must be an array");
  if (j["k"].get<std::int64_t>() != static_cast<std::int64_t>(arr.size())) {
    throw Error("decomposition 'k' does not match the number of classes");
  }
  std::vector<std::vector<Edge>> classes;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::vector<Edge> cls;
    for (auto [u, v] : pairs_from_json(arr[i], "class " + std::to_string(i))) {
      if (u < 0 || v < 0 || u >= static_cast<std::int64_t>(host.order()) ||
          v >= static_cast<std::int64_t>(host.order()) || u == v) {
        throw Error("class " + std::to_string(i) + " has invalid pair [" + std::to_string(u) +
                    "," + std::to_string(v) + "]");
      }
      cls.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    classes.push_back(std::move(cls));
  }
  return Decomposition(host, std::move(classes), mode);
}

inline json witness_to_json(const P4Witness& w) { return json::array({w.a, w.b, w.c, w.d}); }

}  // namespace cograph
