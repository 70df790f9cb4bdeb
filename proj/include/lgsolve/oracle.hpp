#pragma once

// Exhaustive reference solvers for small instances. Nothing here touches
// the flow network; every answer comes from enumeration.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "lgsolve/cut_solver.hpp"
#include "lgsolve/errors.hpp"
#include "lgsolve/graph_domain.hpp"
#include "lgsolve/level_solver.hpp"
#include "lgsolve/stacker.hpp"

namespace lgsolve::oracle {

struct OracleBudget {
  int max_vertices = 12;          // free vertices for set enumeration
  int max_function_vertices = 6;  // closure vertices with more than one admissible value
  int max_levels = 4;
};

inline constexpr double kMaxEvaluations = 1e8;

/// Values equal within this relative tolerance count as ties.
inline bool same_value(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

struct PerimeterFamily {
  double value = 0.0;
  std::vector<VertexSet> minimizers;  // in enumeration order
  VertexSet minimal;                  // intersection of all minimizers
  VertexSet maximal;                  // union of all minimizers
};

/// Enumerates every admissible S (forced_in ⊆ S ⊆ support minus forced_out).
/// Free vertices are enumerated in index order, lowest index as the lowest bit.
inline PerimeterFamily brute_min_perimeter(const CutProblem& problem, const OracleBudget& budget = {}) {
  const auto& g = *problem.graph;
  if (problem.forced_in.intersects(problem.forced_out)) throw InfeasibleConstraints("forced sets overlap");
  const VertexSet support = region_support(g, problem.region);
  const auto free = (support - problem.forced_in - problem.forced_out).indices();
  if (static_cast<int>(free.size()) > budget.max_vertices || std::ldexp(1.0, static_cast<int>(free.size())) > kMaxEvaluations)
    throw BudgetExceeded("too many free vertices for exhaustive enumeration");

  const std::uint64_t total = std::uint64_t{1} << free.size();
  std::vector<double> values(total);
  double best = std::numeric_limits<double>::infinity();
  auto subset = [&](std::uint64_t mask) {
    VertexSet s = problem.forced_in & support;
    for (std::size_t k = 0; k < free.size(); ++k)
      if (mask >> k & 1U) s.insert(free[k]);
    return s;
  };
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    values[mask] = perimeter(g, subset(mask), problem.region);
    best = std::min(best, values[mask]);
  }

  PerimeterFamily fam;
  fam.value = best;
  fam.minimal = support;
  fam.maximal = VertexSet(g.size());
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (!same_value(values[mask], best)) continue;
    auto s = subset(mask);
    fam.minimal &= s;
    fam.maximal |= s;
    fam.minimizers.push_back(std::move(s));
  }
  if (!same_value(perimeter(g, fam.minimal, problem.region), best) ||
      !same_value(perimeter(g, fam.maximal, problem.region), best))
    throw InternalError("minimizer family is not closed under intersection and union");
  return fam;
}

/// True when every pairwise intersection and union of the family is again a
/// minimizer of the same problem.
inline bool lattice_closed(const CutProblem& problem, const PerimeterFamily& fam) {
  const auto& g = *problem.graph;
  for (std::size_t i = 0; i < fam.minimizers.size(); ++i)
    for (std::size_t j = i + 1; j < fam.minimizers.size(); ++j) {
      const auto& s = fam.minimizers[i];
      const auto& t = fam.minimizers[j];
      if (!same_value(perimeter(g, s & t, problem.region), fam.value)) return false;
      if (!same_value(perimeter(g, s | t, problem.region), fam.value)) return false;
    }
  return true;
}

struct TvOptimum {
  double energy = 0.0;
  std::vector<double> witness;             // first optimum in enumeration order
  std::vector<double> pointwise_minimal;   // infimum of all optima, itself optimal
  std::size_t optimal_count = 0;
};

/// Enumerates every grid-valued function on the closure within the box
/// constraints and minimizes the total variation on edges that touch the
/// interior. A value L + k*delta is admissible at x when the number of
/// thresholds below the lower bound at x is <= k <= the number below the
/// upper bound (psi1/psi2 inside, f/g on the boundary).
inline TvOptimum brute_min_tv(const WeightedDomainGraph& g, const ProblemData& data, const LevelGrid& grid,
                              const OracleBudget& budget = {}) {
  const auto closure = region(g, RegionKind::OmegaClosure).members.indices();
  if (grid.levels > budget.max_levels) throw BudgetExceeded("too many levels for function enumeration");

  const auto ts = grid.thresholds();
  auto below = [&](double bound) {
    return static_cast<int>(std::count_if(ts.begin(), ts.end(), [&](double t) { return t < bound; }));
  };
  std::vector<int> lo(closure.size()), hi(closure.size());
  std::vector<long> slot(g.size(), -1);
  for (std::size_t k = 0; k < closure.size(); ++k) {
    const auto v = closure[k];
    slot[v] = static_cast<long>(k);
    const bool inside = g.role(v) == Role::Interior;
    lo[k] = below(inside ? data.psi1[v] : data.f[v]);
    hi[k] = below(inside ? data.psi2[v] : data.g[v]);
    if (lo[k] > hi[k]) throw InfeasibleConstraints("empty admissible range at '" + g.vertex(v).id + "'");
  }
  int free = 0;
  double evaluations = 1.0;
  for (std::size_t k = 0; k < closure.size(); ++k) {
    free += hi[k] > lo[k] ? 1 : 0;
    evaluations *= hi[k] - lo[k] + 1;
  }
  if (free > budget.max_function_vertices || evaluations > kMaxEvaluations)
    throw BudgetExceeded("function enumeration exceeds the oracle budget");

  struct Term {
    std::size_t a, b;
    double w;
  };
  std::vector<Term> terms;
  for (const auto& e : g.edges())
    if (g.role(e.a) == Role::Interior || g.role(e.b) == Role::Interior)
      terms.push_back(Term{static_cast<std::size_t>(slot[e.a]), static_cast<std::size_t>(slot[e.b]), e.w});

  const double delta = grid.delta();
  std::vector<int> k(lo);
  auto energy_of = [&] {
    double s = 0.0;
    for (const auto& t : terms) s += t.w * std::abs(k[t.a] - k[t.b]);
    return s * delta;
  };
  auto as_function = [&](const std::vector<int>& idx) {
    std::vector<double> u(g.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t j = 0; j < closure.size(); ++j) u[closure[j]] = grid.lower + delta * idx[j];
    return u;
  };

  // Two passes: find the optimum, then collect the pointwise infimum of optima.
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> witness;
  auto for_each = [&](auto&& visit) {
    k = lo;
    while (true) {
      visit();
      std::size_t j = 0;
      while (j < k.size() && k[j] == hi[j]) {
        k[j] = lo[j];
        ++j;
      }
      if (j == k.size()) break;
      ++k[j];
    }
  };
  for_each([&] {
    const double e = energy_of();
    if (witness.empty() || (e < best && !same_value(e, best))) {
      best = e;
      witness = k;
    }
  });
  TvOptimum out;
  std::vector<int> inf_idx(hi);
  for_each([&] {
    if (!same_value(energy_of(), best)) return;
    ++out.optimal_count;
    for (std::size_t j = 0; j < k.size(); ++j) inf_idx[j] = std::min(inf_idx[j], k[j]);
  });
  k = inf_idx;
  if (!same_value(energy_of(), best)) throw InternalError("pointwise infimum of TV minimizers is not a minimizer");

  out.energy = best;
  out.witness = as_function(witness);
  out.pointwise_minimal = as_function(inf_idx);
  return out;
}

}  // namespace lgsolve::oracle
