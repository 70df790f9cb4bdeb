#pragma once

// Constrained minimum-perimeter problems solved as s-t minimum cuts.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <vector>

#include "lgsolve/errors.hpp"
#include "lgsolve/graph_domain.hpp"

namespace lgsolve {

enum class Selection { Minimal, Maximal, Any };

inline const char* to_string(Selection s) {
  switch (s) {
    case Selection::Minimal: return "minimal";
    case Selection::Maximal: return "maximal";
    case Selection::Any: return "any";
  }
  return "?";
}

/// Minimize perimeter(S, region) over S with forced_in ⊆ S and S ∩ forced_out = ∅.
/// The free variables are the vertices of the region support (region plus
/// every endpoint of a counted edge); members never leave the support.
struct CutProblem {
  const WeightedDomainGraph* graph = nullptr;
  Region region;
  VertexSet forced_in;
  VertexSet forced_out;
};

struct SolutionSet {
  VertexSet members;
  double perimeter_value = 0.0;
  Selection selection = Selection::Any;
};

/// Builds a CutProblem and checks its invariants.
inline CutProblem make_cut_problem(const WeightedDomainGraph& g, Region region, VertexSet forced_in,
                                   VertexSet forced_out) {
  if (forced_in.universe() != g.size() || forced_out.universe() != g.size())
    throw InvalidParameter("constraint sets do not match the graph");
  if (forced_in.intersects(forced_out)) {
    const auto clash = (forced_in & forced_out).indices().front();
    throw InfeasibleConstraints("vertex '" + g.vertex(clash).id + "' is both forced in and forced out");
  }
  const VertexSet support = region_support(g, region);
  if (!(forced_in | forced_out).is_subset_of(support))
    throw InvalidParameter("constrained vertices must lie in the region or next to it");
  return CutProblem{&g, std::move(region), std::move(forced_in), std::move(forced_out)};
}

/// Dinic max-flow on double capacities. Residual capacities at or below
/// `tolerance` are treated as saturated.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes, double tolerance = 0.0)
      : head_(nodes), level_(nodes), cursor_(nodes), tol_(tolerance) {}

  std::size_t size() const { return head_.size(); }

  /// Arc u->v with capacity cap_uv, paired with v->u of capacity cap_vu.
  void add_arc_pair(std::size_t u, std::size_t v, double cap_uv, double cap_vu) {
    head_[u].push_back(arcs_.size());
    arcs_.push_back(Arc{v, cap_uv});
    head_[v].push_back(arcs_.size());
    arcs_.push_back(Arc{u, cap_vu});
  }

  double max_flow(std::size_t s, std::size_t t) {
    double total = 0.0;
    while (build_levels(s, t)) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (true) {
        const double pushed = augment(s, t, std::numeric_limits<double>::infinity());
        if (pushed <= 0.0) break;
        total += pushed;
      }
    }
    return total;
  }

  /// Nodes reachable from s through arcs with residual capacity.
  std::vector<std::uint8_t> reachable_from(std::size_t s) const {
    std::vector<std::uint8_t> seen(size(), 0);
    std::deque<std::size_t> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      for (auto a : head_[u]) {
        const auto& arc = arcs_[a];
        if (arc.residual > tol_ && !seen[arc.to]) {
          seen[arc.to] = 1;
          queue.push_back(arc.to);
        }
      }
    }
    return seen;
  }

  /// Nodes from which t is reachable through arcs with residual capacity.
  std::vector<std::uint8_t> reaching(std::size_t t) const {
    std::vector<std::uint8_t> seen(size(), 0);
    std::deque<std::size_t> queue{t};
    seen[t] = 1;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (auto a : head_[v]) {
        // a is v->u; its partner u->v has index a^1.
        const auto u = arcs_[a].to;
        if (arcs_[a ^ 1].residual > tol_ && !seen[u]) {
          seen[u] = 1;
          queue.push_back(u);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    double residual;
  };

  bool build_levels(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<std::size_t> queue{s};
    level_[s] = 0;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      for (auto a : head_[u]) {
        const auto& arc = arcs_[a];
        if (arc.residual > tol_ && level_[arc.to] < 0) {
          level_[arc.to] = level_[u] + 1;
          queue.push_back(arc.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double augment(std::size_t u, std::size_t t, double limit) {
    if (u == t) return limit;
    for (auto& i = cursor_[u]; i < head_[u].size(); ++i) {
      const auto a = head_[u][i];
      auto& arc = arcs_[a];
      if (arc.residual <= tol_ || level_[arc.to] != level_[u] + 1) continue;
      const double pushed = augment(arc.to, t, std::min(limit, arc.residual));
      if (pushed > 0.0) {
        arc.residual -= pushed;
        arcs_[a ^ 1].residual += pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<std::size_t>> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  double tol_;
};

/// Result of one min-cut solve: the flow value and both extreme cut sides.
struct CutResult {
  double flow_value = 0.0;
  SolutionSet minimal;
  SolutionSet maximal;
};

/// Capacity of the constraint arcs: strictly above any finite cut.
inline double big_m(const WeightedDomainGraph& g) { return 1.0 + 2.0 * g.total_weight(); }

inline CutResult solve_cut(const CutProblem& problem) {
  const auto& g = *problem.graph;
  if (problem.forced_in.intersects(problem.forced_out))
    throw InfeasibleConstraints("forced-in and forced-out sets overlap");

  const VertexSet support = region_support(g, problem.region);
  const std::size_t n = g.size();
  const std::size_t source = n, sink = n + 1;
  const double m = big_m(g);
  FlowNetwork net(n + 2, 1e-12 * m);
  for (const auto& e : g.edges())
    if (problem.region.counts(e)) net.add_arc_pair(e.a, e.b, e.w, e.w);
  for (std::size_t v = 0; v < n; ++v) {
    if (problem.forced_in.contains(v)) net.add_arc_pair(source, v, m, 0.0);
    if (problem.forced_out.contains(v)) net.add_arc_pair(v, sink, m, 0.0);
  }

  CutResult result;
  result.flow_value = net.max_flow(source, sink);
  const auto from_source = net.reachable_from(source);
  const auto to_sink = net.reaching(sink);

  result.minimal.members = VertexSet(n);
  result.maximal.members = VertexSet(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!support.contains(v)) continue;
    if (from_source[v]) result.minimal.members.insert(v);
    if (!to_sink[v]) result.maximal.members.insert(v);
  }
  result.minimal.selection = Selection::Minimal;
  result.maximal.selection = Selection::Maximal;
  result.minimal.perimeter_value = perimeter(g, result.minimal.members, problem.region);
  result.maximal.perimeter_value = perimeter(g, result.maximal.members, problem.region);
  return result;
}

inline double max_flow(const CutProblem& problem) { return solve_cut(problem).flow_value; }

/// Inclusion-wise least minimizer: the source side of the residual network.
inline SolutionSet minimal_cut_side(const CutProblem& problem) { return solve_cut(problem).minimal; }

/// Inclusion-wise greatest minimizer: the support minus the vertices that
/// still reach the sink in the residual network.
inline SolutionSet maximal_cut_side(const CutProblem& problem) { return solve_cut(problem).maximal; }

}  // namespace lgsolve
