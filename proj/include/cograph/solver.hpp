#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "cograph/decomposition.hpp"
#include "cograph/graph.hpp"

namespace cograph {

// Class masks have one bit per class; k is capped so masks fit in 32 bits
// and cover-mode value lists (2^k - 1 entries) stay small.
inline constexpr std::size_t kMaxSolverClasses = 16;

struct SolverOptions {
  DecompositionMode mode = DecompositionMode::Partition;
  std::size_t k_max = 3;
  std::uint64_t budget_nodes = 0;  // 0 = unlimited
  unsigned jobs = 1;
  // Pre-assigned class masks, by host edge index. Forcing edges disables
  // class-symmetry breaking.
  std::vector<std::pair<std::size_t, std::uint32_t>> forced;
};

enum class SolveStatus { Found, Infeasible, Timeout };

inline std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Found: return "found";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Timeout: return "timeout";
  }
  return "?";
}

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Decomposition> decomposition;  // Found
  std::size_t k_max = 0;
  // Every k < lower_bound is proven infeasible. On Found it equals the k
  // returned; on Timeout it is the k whose search ran out of budget.
  std::size_t lower_bound = 1;
  // Class count of a known valid partition (Misra–Gries), when no edges
  // are forced.
  std::optional<std::size_t> upper_bound;
  std::uint64_t nodes = 0;
};

namespace detail {

// Backtracking over per-edge class masks for a fixed number of classes.
//
// A path constraint is a hard conflict only when all three path edges and
// all host chords are assigned, some class holds the whole path, and no
// chord shares that class. An unassigned chord defers the conflict, since
// adding a chord to a class can remove an induced P4.
class ClassSearch {
 public:
  struct State {
    std::vector<std::uint32_t> mask;  // by host edge index; 0 = unassigned
    std::size_t used = 0;             // classes introduced so far (symmetry breaking)
    std::size_t depth = 0;            // position in order()
  };

  enum class Outcome { Exhausted, Stopped, Timeout };

  ClassSearch(const Graph& g, std::shared_ptr<const std::vector<P4Constraint>> constraints,
              DecompositionMode mode, std::size_t k, bool break_symmetry,
              const std::vector<std::pair<std::size_t, std::uint32_t>>& forced)
      : g_(g), constraints_(std::move(constraints)), mode_(mode), k_(k),
        break_symmetry_(break_symmetry && forced.empty()) {
    touching_.resize(g.size());
    for (std::size_t i = 0; i < constraints_->size(); ++i) {
      const auto& c = (*constraints_)[i];
      for (std::size_t e : c.path_edges) touching_[e].push_back(i);
      for (std::size_t e : c.chord_edges) touching_[e].push_back(i);
    }
    for (auto& t : touching_) {
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
    }

    initial_.mask.assign(g.size(), 0);
    std::vector<char> is_forced(g.size(), 0);
    for (auto [e, m] : forced) {
      if (e >= g.size()) throw Error("forced edge index out of range");
      if (m == 0) throw Error("forced class mask is empty");
      if (mode == DecompositionMode::Partition && std::popcount(m) != 1) {
        throw Error("forced mask must name a single class in partition mode");
      }
      if (m >> k != 0) forced_out_of_range_ = true;
      initial_.mask[e] = m;
      is_forced[e] = 1;
    }
    for (std::size_t e = 0; e < g.size(); ++e) {
      if (is_forced[e] && !consistent(initial_, e)) forced_conflict_ = true;
    }

    // Edges by degree sum, descending; ties by edge index.
    for (std::size_t e = 0; e < g.size(); ++e) {
      if (!is_forced[e]) order_.push_back(e);
    }
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const auto& ea = g.edges()[a];
      const auto& eb = g.edges()[b];
      return g.degree(ea.u) + g.degree(ea.v) > g.degree(eb.u) + g.degree(eb.v);
    });

    // Candidate masks: single classes, or in cover mode all nonempty
    // subsets ordered by size and then value.
    if (mode == DecompositionMode::Partition) {
      for (std::size_t c = 0; c < k; ++c) values_.push_back(std::uint32_t{1} << c);
    } else {
      for (std::uint32_t m = 1; m < (std::uint32_t{1} << k); ++m) values_.push_back(m);
      std::stable_sort(values_.begin(), values_.end(), [](std::uint32_t a, std::uint32_t b) {
        return std::popcount(a) < std::popcount(b);
      });
    }
  }

  // False if forced assignments already rule out every completion.
  bool viable() const noexcept { return !forced_conflict_ && !forced_out_of_range_; }
  const State& initial() const noexcept { return initial_; }
  std::size_t edges_to_assign() const noexcept { return order_.size(); }

  // Shared node accounting; budget 0 = unlimited.
  void set_counter(std::atomic<std::uint64_t>* counter, std::uint64_t budget) {
    counter_ = counter;
    budget_ = budget;
  }
  void set_cancel(std::function<bool()> cancel) { cancel_ = std::move(cancel); }

  // Children of `s`, in search order, that pass the conflict check.
  template <typename F>
  void expand(const State& s, F&& on_child) const {
    const std::size_t e = order_[s.depth];
    for (std::uint32_t m : values_) {
      const auto used = admissible(m, s.used);
      if (!used) continue;
      State child = s;
      child.mask[e] = m;
      if (!consistent(child, e)) continue;
      child.used = *used;
      child.depth = s.depth + 1;
      on_child(std::move(child));
    }
  }

  // Depth-first search below `s`; `on_solution` returns true to stop.
  template <typename F>
  Outcome run(State& s, F&& on_solution) {
    if (s.depth == order_.size()) return on_solution(s) ? Outcome::Stopped : Outcome::Exhausted;
    if (cancel_ && cancel_()) return Outcome::Stopped;
    const std::size_t e = order_[s.depth];
    const std::size_t saved_used = s.used;
    for (std::uint32_t m : values_) {
      const auto used = admissible(m, s.used);
      if (!used) continue;
      if (counter_) {
        const auto spent = counter_->fetch_add(1, std::memory_order_relaxed) + 1;
        if (budget_ != 0 && spent > budget_) {
          s.mask[e] = 0;
          return Outcome::Timeout;
        }
      }
      s.mask[e] = m;
      if (!consistent(s, e)) continue;
      s.used = *used;
      ++s.depth;
      const Outcome o = run(s, on_solution);
      --s.depth;
      s.used = saved_used;
      if (o != Outcome::Exhausted) {
        if (o == Outcome::Timeout) s.mask[e] = 0;
        return o;
      }
    }
    s.mask[e] = 0;
    return Outcome::Exhausted;
  }

  // Class count after assigning mask m when `used` classes are already
  // introduced; nullopt if symmetry breaking forbids m. New classes must
  // be introduced in order, so m must contain every class in used..max(m).
  std::optional<std::size_t> admissible(std::uint32_t m, std::size_t used) const {
    if (!break_symmetry_) return used;
    const auto hi = static_cast<std::size_t>(std::bit_width(m)) - 1;
    if (hi < used) return used;
    const std::uint32_t need =
        ((std::uint32_t{1} << (hi + 1)) - 1) & ~((std::uint32_t{1} << used) - 1);
    if ((m & need) != need) return std::nullopt;
    return hi + 1;
  }

  bool consistent(const State& s, std::size_t e) const {
    for (std::size_t ci : touching_[e]) {
      const auto& c = (*constraints_)[ci];
      std::uint32_t common = ~std::uint32_t{0};
      bool complete = true;
      for (std::size_t p : c.path_edges) {
        common &= s.mask[p];
        complete = complete && s.mask[p] != 0;
      }
      if (!complete || common == 0) continue;
      std::uint32_t chords = 0;
      for (std::size_t ch : c.chord_edges) {
        if (s.mask[ch] == 0) {
          complete = false;
          break;
        }
        chords |= s.mask[ch];
      }
      if (complete && (common & ~chords) != 0) return false;
    }
    return true;
  }

  Decomposition to_decomposition(const State& s) const {
    std::vector<std::vector<Edge>> classes(k_);
    for (std::size_t e = 0; e < g_.size(); ++e) {
      for (std::size_t c = 0; c < k_; ++c) {
        if ((s.mask[e] >> c) & 1U) classes[c].push_back(g_.edges()[e]);
      }
    }
    return Decomposition(g_, std::move(classes), mode_);
  }

 private:
  const Graph& g_;
  std::shared_ptr<const std::vector<P4Constraint>> constraints_;
  DecompositionMode mode_;
  std::size_t k_;
  bool break_symmetry_;
  bool forced_conflict_ = false;
  bool forced_out_of_range_ = false;
  std::vector<std::vector<std::size_t>> touching_;
  std::vector<std::size_t> order_;
  std::vector<std::uint32_t> values_;
  State initial_;
  std::atomic<std::uint64_t>* counter_ = nullptr;
  std::uint64_t budget_ = 0;
  std::function<bool()> cancel_;
};

// One fixed-k search; returns the first solution in canonical order.
inline std::pair<ClassSearch::Outcome, std::optional<Decomposition>> search_fixed_k(
    const Graph& g, const std::shared_ptr<const std::vector<P4Constraint>>& constraints,
    const SolverOptions& opts, std::size_t k, std::atomic<std::uint64_t>& nodes) {
  using Outcome = ClassSearch::Outcome;
  ClassSearch search(g, constraints, opts.mode, k, true, opts.forced);
  if (!search.viable()) return {Outcome::Exhausted, std::nullopt};
  search.set_counter(&nodes, opts.budget_nodes);

  if (opts.jobs <= 1 || search.edges_to_assign() < 2) {
    ClassSearch::State s = search.initial();
    std::optional<Decomposition> found;
    const Outcome o = search.run(s, [&](const ClassSearch::State& st) {
      found = search.to_decomposition(st);
      return true;
    });
    if (o == Outcome::Timeout) return {Outcome::Timeout, std::nullopt};
    return {found ? Outcome::Stopped : Outcome::Exhausted, std::move(found)};
  }

  // Parallel: expand level by level (keeping canonical order) into enough
  // subtrees, then search them concurrently. The reported solution is the
  // one from the earliest subtree, which is the sequential answer.
  std::vector<ClassSearch::State> frontier{search.initial()};
  const std::size_t target = std::size_t{8} * opts.jobs;
  while (frontier.size() < target && frontier.front().depth < search.edges_to_assign()) {
    std::vector<ClassSearch::State> next;
    for (const auto& s : frontier) {
      search.expand(s, [&](ClassSearch::State child) {
        nodes.fetch_add(1, std::memory_order_relaxed);
        next.push_back(std::move(child));
      });
    }
    frontier = std::move(next);
    if (frontier.empty()) return {Outcome::Exhausted, std::nullopt};
    if (opts.budget_nodes != 0 && nodes.load() > opts.budget_nodes) {
      return {Outcome::Timeout, std::nullopt};
    }
  }

  std::atomic<std::size_t> next_task{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::atomic<bool> timed_out{false};
  std::mutex mu;
  std::optional<Decomposition> best_solution;

  auto worker = [&] {
    ClassSearch local(g, constraints, opts.mode, k, true, opts.forced);
    local.set_counter(&nodes, opts.budget_nodes);
    while (true) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= frontier.size() || task > best.load() || timed_out.load()) return;
      local.set_cancel([&, task] { return best.load() < task || timed_out.load(); });
      ClassSearch::State s = frontier[task];
      std::optional<Decomposition> found;
      const Outcome o = local.run(s, [&](const ClassSearch::State& st) {
        found = local.to_decomposition(st);
        return true;
      });
      if (o == Outcome::Timeout) {
        timed_out = true;
        return;
      }
      if (found) {
        std::lock_guard lock(mu);
        if (task < best.load()) {
          best = task;
          best_solution = std::move(found);
        }
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < opts.jobs; ++j) pool.emplace_back(worker);
  }
  if (best_solution) return {Outcome::Stopped, std::move(best_solution)};
  if (timed_out) return {Outcome::Timeout, std::nullopt};
  return {Outcome::Exhausted, std::nullopt};
}

}  // namespace detail

// Minimum cograph k-partition or k-cover with k <= k_max, by exhaustive
// backtracking with class-symmetry breaking and chord-aware pruning.
inline SolveResult exact_min_decomposition(const Graph& g, const SolverOptions& opts) {
  if (opts.k_max < 1) throw Error("k_max must be at least 1");
  if (opts.k_max > kMaxSolverClasses) {
    throw Error("k_max " + std::to_string(opts.k_max) + " exceeds the solver limit of " +
                std::to_string(kMaxSolverClasses));
  }
  SolveResult result;
  result.k_max = opts.k_max;
  if (opts.forced.empty()) result.upper_bound = vizing_partition(g).k();

  if (g.size() == 0) {
    result.status = SolveStatus::Found;
    result.lower_bound = 1;
    result.decomposition = Decomposition(g, {{}}, opts.mode);
    return result;
  }

  auto constraints = std::make_shared<const std::vector<P4Constraint>>(p4_constraints(g));
  std::atomic<std::uint64_t> nodes{0};
  for (std::size_t k = 1; k <= opts.k_max; ++k) {
    auto [outcome, found] = detail::search_fixed_k(g, constraints, opts, k, nodes);
    result.nodes = nodes.load();
    result.lower_bound = k;
    if (outcome == detail::ClassSearch::Outcome::Timeout) {
      result.status = SolveStatus::Timeout;
      return result;
    }
    if (found) {
      if (auto v = validate(*found); !v.ok()) {
        throw Error("exact solver produced an invalid decomposition: " + v.describe());
      }
      result.status = SolveStatus::Found;
      result.decomposition = std::move(found);
      return result;
    }
  }
  result.lower_bound = opts.k_max + 1;
  result.status = SolveStatus::Infeasible;
  return result;
}

inline SolveResult exact_min_partition(const Graph& g, std::size_t k_max,
                                       std::uint64_t budget_nodes = 0) {
  SolverOptions opts;
  opts.mode = DecompositionMode::Partition;
  opts.k_max = k_max;
  opts.budget_nodes = budget_nodes;
  return exact_min_decomposition(g, opts);
}

inline SolveResult exact_min_cover(const Graph& g, std::size_t k_max,
                                   std::uint64_t budget_nodes = 0) {
  SolverOptions opts;
  opts.mode = DecompositionMode::Cover;
  opts.k_max = k_max;
  opts.budget_nodes = budget_nodes;
  return exact_min_decomposition(g, opts);
}

struct Enumeration {
  SolveStatus status = SolveStatus::Infeasible;  // Found if any solution; Timeout if cut short
  std::uint64_t solutions = 0;
  std::uint64_t nodes = 0;
};

// Visits every valid decomposition with exactly `k` labelled classes
// (classes may be empty; no symmetry breaking), in search order. `visit`
// returns true to stop early.
inline Enumeration enumerate_decompositions(
    const Graph& g, DecompositionMode mode, std::size_t k,
    const std::function<bool(const Decomposition&)>& visit, std::uint64_t budget_nodes = 0,
    const std::vector<std::pair<std::size_t, std::uint32_t>>& forced = {}) {
  if (k < 1 || k > kMaxSolverClasses) throw Error("k out of range for enumeration");
  auto constraints = std::make_shared<const std::vector<P4Constraint>>(p4_constraints(g));
  detail::ClassSearch search(g, constraints, mode, k, false, forced);
  Enumeration out;
  if (!search.viable()) return out;
  std::atomic<std::uint64_t> nodes{0};
  search.set_counter(&nodes, budget_nodes);
  auto s = search.initial();
  const auto o = search.run(s, [&](const detail::ClassSearch::State& st) {
    ++out.solutions;
    return visit(search.to_decomposition(st));
  });
  out.nodes = nodes.load();
  if (o == detail::ClassSearch::Outcome::Timeout) {
    out.status = SolveStatus::Timeout;
  } else {
    out.status = out.solutions > 0 ? SolveStatus::Found : SolveStatus::Infeasible;
  }
  return out;
}

}  // namespace cograph
