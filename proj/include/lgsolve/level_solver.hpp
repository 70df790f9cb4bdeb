#pragma once

// Obstacle and double-boundary data, their superlevel constraints at a
// threshold t, and the per-threshold strong and eps-weak solution sets.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "lgsolve/cut_solver.hpp"
#include "lgsolve/errors.hpp"
#include "lgsolve/graph_domain.hpp"

namespace lgsolve {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Obstacles psi1 <= u <= psi2 on interior vertices (extended reals) and the
/// trace band f <= u <= g on boundary vertices (finite). All four vectors
/// are indexed by vertex; entries for other roles are ignored.
struct ProblemData {
  std::vector<double> psi1;
  std::vector<double> psi2;
  std::vector<double> f;
  std::vector<double> g;

  /// No obstacles and an unset (NaN) boundary band.
  static ProblemData unconstrained(const WeightedDomainGraph& graph) {
    const auto n = graph.size();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return ProblemData{std::vector<double>(n, -kInf), std::vector<double>(n, kInf), std::vector<double>(n, nan),
                       std::vector<double>(n, nan)};
  }

  /// Boundary data from a function of position; no obstacles.
  template <typename Lower, typename Upper>
  static ProblemData from_boundary(const WeightedDomainGraph& graph, Lower&& lower, Upper&& upper) {
    auto d = unconstrained(graph);
    for (std::size_t v = 0; v < graph.size(); ++v) {
      if (graph.role(v) != Role::Boundary) continue;
      const auto& p = graph.vertex(v).pos;
      if (!p) throw MissingValue("boundary vertex '" + graph.vertex(v).id + "' has no position");
      d.f[v] = lower((*p)[0], (*p)[1]);
      d.g[v] = upper((*p)[0], (*p)[1]);
    }
    return d;
  }

  /// Reflected data (-psi2, -psi1, -g, -f): maximal solutions of the
  /// original are negated minimal solutions of this.
  ProblemData negated() const {
    ProblemData d{psi2, psi1, g, f};
    for (auto* vec : {&d.psi1, &d.psi2, &d.f, &d.g})
      for (auto& x : *vec) x = -x;
    return d;
  }
};

/// Throws MissingValue unless every boundary vertex has finite f and g and no
/// interior obstacle value is NaN.
inline void validate_data(const WeightedDomainGraph& graph, const ProblemData& data) {
  const auto n = graph.size();
  if (data.psi1.size() != n || data.psi2.size() != n || data.f.size() != n || data.g.size() != n)
    throw MissingValue("problem data does not cover every vertex");
  for (std::size_t v = 0; v < n; ++v) {
    const auto& id = graph.vertex(v).id;
    if (graph.role(v) == Role::Interior) {
      if (std::isnan(data.psi1[v]) || std::isnan(data.psi2[v]))
        throw MissingValue("missing obstacle value at interior vertex '" + id + "'");
    } else if (graph.role(v) == Role::Boundary) {
      if (!std::isfinite(data.f[v])) throw MissingValue("missing or non-finite f at boundary vertex '" + id + "'");
      if (!std::isfinite(data.g[v])) throw MissingValue("missing or non-finite g at boundary vertex '" + id + "'");
    }
  }
}

struct FeasibilityReport {
  bool ok = true;
  std::vector<std::size_t> violating_vertices;
  std::vector<std::string> violations;
  /// Boundary/interior neighbours with psi1(v) > g(z) or psi2(v) < f(z).
  /// Discretely harmless, but such data is infeasible in the continuum.
  std::vector<std::string> warnings;
};

inline FeasibilityReport check_feasibility(const WeightedDomainGraph& graph, const ProblemData& data) {
  validate_data(graph, data);
  FeasibilityReport report;
  auto fmt = [](double x) {
    std::ostringstream os;
    os << x;
    return os.str();
  };
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const auto& id = graph.vertex(v).id;
    if (graph.role(v) == Role::Interior && data.psi1[v] > data.psi2[v]) {
      report.violating_vertices.push_back(v);
      report.violations.push_back("psi1 > psi2 at interior vertex '" + id + "' (" + fmt(data.psi1[v]) + " > " +
                                  fmt(data.psi2[v]) + ")");
    } else if (graph.role(v) == Role::Boundary) {
      if (data.f[v] > data.g[v]) {
        report.violating_vertices.push_back(v);
        report.violations.push_back("f > g at boundary vertex '" + id + "' (" + fmt(data.f[v]) + " > " +
                                    fmt(data.g[v]) + ")");
      }
      for (auto e : graph.incident(v)) {
        const auto w = graph.other_end(e, v);
        if (graph.role(w) != Role::Interior) continue;
        if (data.psi1[w] > data.g[v] || data.psi2[w] < data.f[v])
          report.warnings.push_back("obstacle at '" + graph.vertex(w).id + "' crosses the boundary band at '" + id +
                                    "'");
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

inline void require_feasible(const WeightedDomainGraph& graph, const ProblemData& data) {
  auto report = check_feasibility(graph, data);
  if (!report.ok) throw InfeasibleConstraints(report.violations.front());
}

/// Forced sets for the superlevel problem at threshold t.
struct LevelConstraint {
  double t = 0.0;
  VertexSet forced_in;
  VertexSet forced_out;
};

/// forced_in  = {interior: psi1 > t} ∪ {boundary: f > t}
/// forced_out = {interior: psi2 <= t} ∪ {boundary: g <= t}
inline LevelConstraint build_level_constraints(const WeightedDomainGraph& graph, const ProblemData& data, double t) {
  require_feasible(graph, data);
  LevelConstraint c{t, VertexSet(graph.size()), VertexSet(graph.size())};
  for (std::size_t v = 0; v < graph.size(); ++v) {
    switch (graph.role(v)) {
      case Role::Interior:
        if (data.psi1[v] > t) c.forced_in.insert(v);
        if (data.psi2[v] <= t) c.forced_out.insert(v);
        break;
      case Role::Boundary:
        if (data.f[v] > t) c.forced_in.insert(v);
        if (data.g[v] <= t) c.forced_out.insert(v);
        break;
      case Role::Exterior:
        break;
    }
  }
  return c;
}

/// Region on which strong-solution energies are measured: edges with at
/// least one interior endpoint. Boundary values act as discrete traces.
inline Region strong_region(const WeightedDomainGraph& graph) { return region(graph, RegionKind::OmegaOnly); }

inline CutProblem level_cut_problem(const WeightedDomainGraph& graph, const ProblemData& data, double t) {
  auto c = build_level_constraints(graph, data, t);
  return make_cut_problem(graph, strong_region(graph), std::move(c.forced_in), std::move(c.forced_out));
}

/// Both extreme strong solution sets at threshold t from a single cut.
inline CutResult solve_level(const WeightedDomainGraph& graph, const ProblemData& data, double t) {
  return solve_cut(level_cut_problem(graph, data, t));
}

inline SolutionSet solve_level_minimal(const WeightedDomainGraph& graph, const ProblemData& data, double t) {
  return solve_level(graph, data, t).minimal;
}

inline SolutionSet solve_level_maximal(const WeightedDomainGraph& graph, const ProblemData& data, double t) {
  return solve_level(graph, data, t).maximal;
}

/// Extends a boundary function to exterior vertices by the value at the
/// nearest boundary vertex (hop distance, ties to the smallest index).
/// Vertices with no path to the boundary get NaN.
inline std::vector<double> extend_from_boundary(const WeightedDomainGraph& graph, const std::vector<double>& values) {
  const auto n = graph.size();
  const auto dist = graph.hop_distances(graph.with_role(Role::Boundary));
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < n; ++v)
    if (dist[v] >= 0) order.push_back(v);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return dist[a] < dist[b]; });

  constexpr auto none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(n, none);
  for (auto v : order) {
    if (dist[v] == 0) {
      owner[v] = v;
      continue;
    }
    for (auto e : graph.incident(v)) {
      const auto u = graph.other_end(e, v);
      if (dist[u] == dist[v] - 1 && owner[u] != none && (owner[v] == none || owner[u] < owner[v])) owner[v] = owner[u];
    }
  }
  std::vector<double> out(values);
  for (std::size_t v = 0; v < n; ++v)
    if (graph.role(v) == Role::Exterior)
      out[v] = owner[v] == none ? std::numeric_limits<double>::quiet_NaN() : values[owner[v]];
  return out;
}

struct EpsWeakSolution {
  SolutionSet set;
  double lambda = 0.0;  // perimeter over OmegaEps(k)
  int hops = 0;
};

/// Minimal eps-weak solution set at threshold t: perimeter measured on
/// OmegaEps(k), obstacles inside, and the extended band {Ext f > t} forced
/// in / {Ext g <= t} forced out at every non-interior vertex of the support.
inline EpsWeakSolution solve_eps_weak(const WeightedDomainGraph& graph, const ProblemData& data, double t, int hops) {
  require_feasible(graph, data);
  Region reg = omega_eps(graph, hops);
  const VertexSet support = region_support(graph, reg);
  const auto ext_f = extend_from_boundary(graph, data.f);
  const auto ext_g = extend_from_boundary(graph, data.g);

  VertexSet in(graph.size()), out(graph.size());
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (!support.contains(v)) continue;
    if (graph.role(v) == Role::Interior) {
      if (data.psi1[v] > t) in.insert(v);
      if (data.psi2[v] <= t) out.insert(v);
    } else {
      if (ext_f[v] > t) in.insert(v);
      if (ext_g[v] <= t) out.insert(v);
    }
  }
  auto result = solve_cut(make_cut_problem(graph, reg, std::move(in), std::move(out)));
  const double lambda = result.minimal.perimeter_value;
  return EpsWeakSolution{std::move(result.minimal), lambda, hops};
}

}  // namespace lgsolve
