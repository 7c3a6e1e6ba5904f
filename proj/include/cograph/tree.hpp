#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cograph/error.hpp"
#include "cograph/graph.hpp"

namespace cograph {

// Rooted tree whose leaves are the vertices 0..L-1 and whose inner nodes
// carry a Label. Leaves carry no label (the empty symbol).
//
// Invariants, checked on construction:
//   * exactly one root, every node reachable from it;
//   * leaves have no children and no label; inner nodes have a label and
//     at least two children;
//   * the leaves are in bijection with 0..L-1;
//   * no inner node has an inner child with the same label (collapsed form).
//
// Construction canonicalizes: nodes are renumbered in preorder with the
// children of each node ordered by their smallest descendant leaf. Two
// trees that are equal up to node numbering and child order therefore
// compare equal with ==.
template <typename Label>
class LabeledTree {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Node {
    std::size_t parent = npos;
    std::optional<Label> label;
    std::vector<std::size_t> children;
    Vertex vertex = kNoVertex;

    bool is_leaf() const noexcept { return children.empty(); }
    bool operator==(const Node&) const = default;
  };

  static Node leaf(Vertex v) {
    Node n;
    n.vertex = v;
    return n;
  }

  static Node inner(Label label, std::vector<std::size_t> children) {
    Node n;
    n.label = label;
    n.children = std::move(children);
    return n;
  }

  // `parent` fields of the input are ignored and recomputed.
  explicit LabeledTree(std::vector<Node> nodes) {
    validate(nodes);
    canonicalize(nodes);
  }

  std::size_t root() const noexcept { return 0; }
  std::size_t leaf_count() const noexcept { return leaf_of_.size(); }
  std::span<const Node> nodes() const noexcept { return nodes_; }
  const Node& node(std::size_t i) const { return nodes_.at(i); }

  std::size_t leaf_of(Vertex x) const {
    if (x >= leaf_of_.size()) {
      throw Error("vertex " + std::to_string(x) + " is not a leaf of the tree");
    }
    return leaf_of_[x];
  }

  std::size_t lca(Vertex x, Vertex y) const {
    std::size_t a = leaf_of(x);
    std::size_t b = leaf_of(y);
    while (depth_[a] > depth_[b]) a = nodes_[a].parent;
    while (depth_[b] > depth_[a]) b = nodes_[b].parent;
    while (a != b) {
      a = nodes_[a].parent;
      b = nodes_[b].parent;
    }
    return a;
  }

  // Label of lca(x, y); nullopt (the empty symbol) iff x == y.
  std::optional<Label> lca_label(Vertex x, Vertex y) const {
    return nodes_[lca(x, y)].label;
  }

  // Leaves below node i, ascending.
  std::vector<Vertex> leaves_below(std::size_t i) const {
    std::vector<Vertex> out;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      const Node& nd = nodes_[cur];
      if (nd.is_leaf()) out.push_back(nd.vertex);
      for (std::size_t c : nd.children) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Applies f to every inner label; the result is re-validated, so a
  // relabelling that breaks collapsed form is rejected.
  template <typename F>
  auto relabel(F&& f) const -> LabeledTree<std::invoke_result_t<F, const Label&>> {
    using Out = LabeledTree<std::invoke_result_t<F, const Label&>>;
    std::vector<typename Out::Node> out(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      out[i].children = nodes_[i].children;
      out[i].vertex = nodes_[i].vertex;
      if (nodes_[i].label) out[i].label = f(*nodes_[i].label);
    }
    return Out(std::move(out));
  }

  friend bool operator==(const LabeledTree& a, const LabeledTree& b) {
    return a.nodes_ == b.nodes_;
  }

 private:
  static void validate(const std::vector<Node>& nodes) {
    if (nodes.empty()) throw Error("tree has no nodes");
    std::vector<std::size_t> parent(nodes.size(), npos);
    std::size_t leaves = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& nd = nodes[i];
      if (nd.is_leaf()) {
        if (nd.label) throw Error("leaf node " + std::to_string(i) + " carries a label");
        if (nd.vertex == kNoVertex) throw Error("leaf node " + std::to_string(i) + " has no vertex");
        ++leaves;
        continue;
      }
      if (!nd.label) throw Error("inner node " + std::to_string(i) + " has no label");
      if (nd.vertex != kNoVertex) {
        throw Error("inner node " + std::to_string(i) + " is bound to a vertex");
      }
      if (nd.children.size() < 2) {
        throw Error("inner node " + std::to_string(i) + " has fewer than two children");
      }
      for (std::size_t c : nd.children) {
        if (c >= nodes.size()) throw Error("node " + std::to_string(i) + " has a dangling child");
        if (parent[c] != npos || c == i) {
          throw Error("node " + std::to_string(c) + " has more than one parent");
        }
        parent[c] = i;
        if (!nodes[c].is_leaf() && nodes[c].label == nd.label) {
          throw Error("inner node " + std::to_string(c) +
                      " has the same label as its parent (tree not collapsed)");
        }
      }
    }
    const auto roots = static_cast<std::size_t>(std::count(parent.begin(), parent.end(), npos));
    if (roots != 1) throw Error("tree must have exactly one root, found " + std::to_string(roots));
    const std::size_t root = static_cast<std::size_t>(
        std::find(parent.begin(), parent.end(), npos) - parent.begin());
    std::size_t reached = 0;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      ++reached;
      for (std::size_t c : nodes[cur].children) stack.push_back(c);
    }
    if (reached != nodes.size()) throw Error("tree contains a cycle or unreachable nodes");
    std::vector<char> seen(leaves, 0);
    for (const Node& nd : nodes) {
      if (!nd.is_leaf()) continue;
      if (nd.vertex >= leaves || seen[nd.vertex]) {
        throw Error("leaves must be in bijection with vertices 0.." + std::to_string(leaves - 1));
      }
      seen[nd.vertex] = 1;
    }
  }

  void canonicalize(const std::vector<Node>& in) {
    std::vector<std::size_t> parent(in.size(), npos);
    for (std::size_t i = 0; i < in.size(); ++i) {
      for (std::size_t c : in[i].children) parent[c] = i;
    }
    const std::size_t root = static_cast<std::size_t>(
        std::find(parent.begin(), parent.end(), npos) - parent.begin());

    // Smallest leaf below each node, children before parents.
    std::vector<std::size_t> post;
    post.reserve(in.size());
    {
      std::vector<std::pair<std::size_t, bool>> stack{{root, false}};
      while (!stack.empty()) {
        auto [cur, done] = stack.back();
        stack.pop_back();
        if (done) {
          post.push_back(cur);
          continue;
        }
        stack.emplace_back(cur, true);
        for (std::size_t c : in[cur].children) stack.emplace_back(c, false);
      }
    }
    std::vector<Vertex> min_leaf(in.size(), kNoVertex);
    for (std::size_t i : post) {
      if (in[i].is_leaf()) {
        min_leaf[i] = in[i].vertex;
      } else {
        for (std::size_t c : in[i].children) min_leaf[i] = std::min(min_leaf[i], min_leaf[c]);
      }
    }

    nodes_.clear();
    nodes_.reserve(in.size());
    depth_.assign(in.size(), 0);
    std::size_t leaves = 0;
    for (const Node& nd : in) leaves += nd.is_leaf() ? 1 : 0;
    leaf_of_.assign(leaves, npos);

    // Preorder with sorted children; (old index, new parent index).
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, npos}};
    while (!stack.empty()) {
      auto [old, new_parent] = stack.back();
      stack.pop_back();
      const std::size_t id = nodes_.size();
      Node nd;
      nd.parent = new_parent;
      nd.label = in[old].label;
      nd.vertex = in[old].vertex;
      nodes_.push_back(std::move(nd));
      if (new_parent != npos) {
        nodes_[new_parent].children.push_back(id);
        depth_[id] = depth_[new_parent] + 1;
      }
      if (in[old].is_leaf()) leaf_of_[in[old].vertex] = id;
      std::vector<std::size_t> kids = in[old].children;
      std::sort(kids.begin(), kids.end(),
                [&](std::size_t a, std::size_t b) { return min_leaf[a] < min_leaf[b]; });
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, id);
    }
  }

  std::vector<Node> nodes_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> leaf_of_;
};

// Newick-style text: leaves are vertex ids, inner nodes are
// "(child,child,...)L", terminated by ';'.
template <typename Label, typename Format>
std::string to_newick(const LabeledTree<Label>& tree, Format&& format_label) {
  std::string out;
  // (node, next child index)
  std::vector<std::pair<std::size_t, std::size_t>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto& [cur, next] = stack.back();
    const auto& nd = tree.node(cur);
    if (nd.is_leaf()) {
      out += std::to_string(nd.vertex);
      stack.pop_back();
      continue;
    }
    if (next == nd.children.size()) {
      out += ')';
      out += format_label(*nd.label);
      stack.pop_back();
      continue;
    }
    out += next == 0 ? '(' : ',';
    const std::size_t child = nd.children[next++];
    stack.emplace_back(child, 0);
  }
  out += ';';
  return out;
}

// Parser for the format written by to_newick. `parse_label` maps the label
// token following ')' to a Label and throws cograph::Error if it is invalid.
template <typename Label, typename Parse>
LabeledTree<Label> parse_newick(std::string_view text, Parse&& parse_label) {
  using Tree = LabeledTree<Label>;
  std::vector<typename Tree::Node> nodes;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void {
    throw ParseError(0, "newick column " + std::to_string(pos + 1) + ": " + what);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto token = [&] {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ',' && text[pos] != ')' && text[pos] != '(' &&
           text[pos] != ';' && !std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    return text.substr(start, pos - start);
  };

  // Explicit stack of open inner nodes; each entry collects child ids.
  std::vector<std::vector<std::size_t>> open;
  std::optional<std::size_t> finished;
  skip_ws();
  while (true) {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    const char ch = text[pos];
    std::size_t produced = 0;
    if (ch == '(') {
      ++pos;
      open.emplace_back();
      continue;
    }
    if (ch == ')') {
      if (open.empty()) fail("unbalanced ')'");
      ++pos;
      skip_ws();
      const auto tok = token();
      if (tok.empty()) fail("inner node without label");
      Label label{};
      try {
        label = parse_label(tok);
      } catch (const Error& e) {
        fail(e.what());
      }
      nodes.push_back(Tree::inner(label, std::move(open.back())));
      open.pop_back();
      produced = nodes.size() - 1;
    } else {
      const auto tok = token();
      if (tok.empty()) fail(std::string("unexpected '") + ch + "'");
      std::size_t v = 0;
      for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("leaf '" + std::string(tok) + "' is not a vertex id");
        v = v * 10 + static_cast<std::size_t>(c - '0');
        if (v >= kNoVertex) fail("leaf id too large");
      }
      nodes.push_back(Tree::leaf(static_cast<Vertex>(v)));
      produced = nodes.size() - 1;
    }
    skip_ws();
    if (open.empty()) {
      finished = produced;
      break;
    }
    open.back().push_back(produced);
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      skip_ws();
      if (pos < text.size() && (text[pos] == ')' || text[pos] == ',')) fail("empty subtree");
    } else if (pos >= text.size() || text[pos] != ')') {
      fail("expected ',' or ')'");
    }
  }
  if (pos >= text.size() || text[pos] != ';') fail("expected ';'");
  ++pos;
  skip_ws();
  if (pos != text.size()) fail("trailing characters after ';'");
  (void)finished;
  return Tree(std::move(nodes));
}

}  // namespace cograph
