#pragma once

// Assembles minimal / maximal solutions from per-threshold solution sets:
// u(x) = L + delta * #{i : x in E_{t_i}} over a uniform midpoint grid.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lgsolve/cut_solver.hpp"
#include "lgsolve/errors.hpp"
#include "lgsolve/graph_domain.hpp"
#include "lgsolve/level_solver.hpp"

namespace lgsolve {

/// Thresholds t_i = lower + (i + 1/2) * delta, i = 0..levels-1.
struct LevelGrid {
  double lower = 0.0;
  double upper = 1.0;
  int levels = 1;

  double delta() const { return (upper - lower) / levels; }
  double threshold(int i) const { return lower + (i + 0.5) * delta(); }
  std::vector<double> thresholds() const {
    std::vector<double> t(static_cast<std::size_t>(levels));
    for (int i = 0; i < levels; ++i) t[static_cast<std::size_t>(i)] = threshold(i);
    return t;
  }
  /// Grid for the reflected problem: thresholds negated and reversed.
  LevelGrid reflected() const { return LevelGrid{-upper, -lower, levels}; }

  friend bool operator==(const LevelGrid&, const LevelGrid&) = default;
};

/// Every finite data value: psi1, psi2 on interior vertices, f, g on boundary ones.
inline std::vector<double> data_values(const WeightedDomainGraph& graph, const ProblemData& data) {
  std::vector<double> out;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (graph.role(v) == Role::Interior) {
      for (double x : {data.psi1[v], data.psi2[v]})
        if (std::isfinite(x)) out.push_back(x);
    } else if (graph.role(v) == Role::Boundary) {
      out.push_back(data.f[v]);
      out.push_back(data.g[v]);
    }
  }
  return out;
}

/// (L, U): L = min(min f, min finite psi2), U = max(max g, max finite psi1).
inline std::pair<double, double> level_bounds(const WeightedDomainGraph& graph, const ProblemData& data) {
  double lo = kInf, hi = -kInf;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (graph.role(v) == Role::Boundary) {
      lo = std::min(lo, data.f[v]);
      hi = std::max(hi, data.g[v]);
    } else if (graph.role(v) == Role::Interior) {
      if (std::isfinite(data.psi2[v])) lo = std::min(lo, data.psi2[v]);
      if (std::isfinite(data.psi1[v])) hi = std::max(hi, data.psi1[v]);
    }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw MissingValue("problem data has no finite values to bound");
  return {lo, hi};
}

/// Builds a grid over [lower, upper] with at least `levels` thresholds, none
/// equal to a data value (levels is bumped until that holds). A degenerate
/// range lower == upper is widened to [lower, lower + 1].
inline LevelGrid make_level_grid(double lower, double upper, int levels, const std::vector<double>& values) {
  if (levels < 1) throw InvalidParameter("the number of levels must be positive");
  if (!(lower <= upper)) throw InvalidParameter("level grid needs lower <= upper");
  if (lower == upper) upper = lower + 1.0;
  const double scale = std::max({1.0, std::abs(lower), std::abs(upper)});
  auto sorted = values;
  std::sort(sorted.begin(), sorted.end());
  for (int n = levels; n < levels + 1000; ++n) {
    LevelGrid grid{lower, upper, n};
    bool clash = false;
    for (double t : grid.thresholds()) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), t - 1e-12 * scale);
      if (it != sorted.end() && *it <= t + 1e-12 * scale) {
        clash = true;
        break;
      }
    }
    if (!clash) return grid;
  }
  throw InternalError("could not place thresholds away from the data values");
}

inline LevelGrid make_level_grid(const WeightedDomainGraph& graph, const ProblemData& data, int levels) {
  const auto [lo, hi] = level_bounds(graph, data);
  return make_level_grid(lo, hi, levels, data_values(graph, data));
}

struct StackedSolution {
  std::vector<double> values;  // NaN outside the closure
  LevelGrid grid;
  std::vector<SolutionSet> level_sets;
  double energy = 0.0;         // total variation of values on the strong region
  double level_energy = 0.0;   // delta * sum of level perimeters
  Selection selection = Selection::Minimal;
  int repairs = 0;             // nesting repairs applied during assembly
};

struct SolveOptions {
  int threads = 1;
};

namespace detail {

template <typename Fn>
std::vector<SolutionSet> solve_each_level(const LevelGrid& grid, int threads, Fn&& solve_one) {
  const auto ts = grid.thresholds();
  std::vector<SolutionSet> sets(ts.size());
  const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || ts.size() < 2) {
    for (std::size_t i = 0; i < ts.size(); ++i) sets[i] = solve_one(ts[i]);
    return sets;
  }
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < ts.size(); i += workers) sets[i] = solve_one(ts[i]);
    }));
  for (auto& j : jobs) j.get();
  return sets;
}

/// Enforces E_{i+1} ⊆ E_i by intersection; the intersection must keep the
/// optimal perimeter, otherwise the solver is broken.
inline int repair_nesting(const WeightedDomainGraph& graph, const Region& energy_region, std::vector<SolutionSet>& sets) {
  int repairs = 0;
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if (sets[i].members.is_subset_of(sets[i - 1].members)) continue;
    ++repairs;
    const double before = sets[i].perimeter_value;
    sets[i].members &= sets[i - 1].members;
    sets[i].perimeter_value = perimeter(graph, sets[i].members, energy_region);
    if (sets[i].perimeter_value > before + 1e-9 * std::max(1.0, before))
      throw InternalError("nesting repair at level " + std::to_string(i) + " raised the perimeter");
  }
  return repairs;
}

inline StackedSolution assemble(const WeightedDomainGraph& graph, const LevelGrid& grid, std::vector<SolutionSet> sets,
                                Selection selection) {
  const Region energy_region = strong_region(graph);
  StackedSolution sol;
  sol.grid = grid;
  sol.selection = selection;
  sol.repairs = repair_nesting(graph, energy_region, sets);

  const VertexSet closure = region(graph, RegionKind::OmegaClosure).members;
  const double delta = grid.delta();
  sol.values.assign(graph.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (!closure.contains(v)) continue;
    int count = 0;
    for (const auto& s : sets) count += s.members.contains(v) ? 1 : 0;
    sol.values[v] = grid.lower + delta * count;
  }
  double perimeter_sum = 0.0;
  for (const auto& s : sets) perimeter_sum += s.perimeter_value;
  sol.level_energy = delta * perimeter_sum;
  sol.energy = total_variation(graph, sol.values, energy_region);
  sol.level_sets = std::move(sets);
  return sol;
}

}  // namespace detail

/// Minimal solution on an explicit grid: the stack of minimal level sets.
inline StackedSolution solve_minimal(const WeightedDomainGraph& graph, const ProblemData& data, const LevelGrid& grid,
                                     const SolveOptions& opts = {}) {
  require_feasible(graph, data);
  const VertexSet closure = region(graph, RegionKind::OmegaClosure).members;
  auto sets = detail::solve_each_level(grid, opts.threads, [&](double t) {
    auto s = solve_level_minimal(graph, data, t);
    s.members &= closure;
    return s;
  });
  return detail::assemble(graph, grid, std::move(sets), Selection::Minimal);
}

inline StackedSolution solve_minimal(const WeightedDomainGraph& graph, const ProblemData& data, int levels,
                                     const SolveOptions& opts = {}) {
  require_feasible(graph, data);
  return solve_minimal(graph, data, make_level_grid(graph, data, levels), opts);
}

/// Maximal solution by stacking maximal level sets directly.
inline StackedSolution solve_maximal_by_levels(const WeightedDomainGraph& graph, const ProblemData& data,
                                               const LevelGrid& grid, const SolveOptions& opts = {}) {
  require_feasible(graph, data);
  const VertexSet closure = region(graph, RegionKind::OmegaClosure).members;
  auto sets = detail::solve_each_level(grid, opts.threads, [&](double t) {
    auto s = solve_level_maximal(graph, data, t);
    s.members &= closure;
    return s;
  });
  return detail::assemble(graph, grid, std::move(sets), Selection::Maximal);
}

/// Maximal solution as the negated minimal solution of the reflected data.
inline StackedSolution solve_maximal(const WeightedDomainGraph& graph, const ProblemData& data, const LevelGrid& grid,
                                     const SolveOptions& opts = {}) {
  auto mirrored = solve_minimal(graph, data.negated(), grid.reflected(), opts);
  const VertexSet closure = region(graph, RegionKind::OmegaClosure).members;
  StackedSolution sol;
  sol.grid = grid;
  sol.selection = Selection::Maximal;
  sol.repairs = mirrored.repairs;
  sol.values = mirrored.values;
  for (auto& x : sol.values) x = -x;
  const auto n = mirrored.level_sets.size();
  sol.level_sets.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& src = mirrored.level_sets[n - 1 - i];
    sol.level_sets[i] = SolutionSet{closure - src.members, src.perimeter_value, Selection::Maximal};
  }
  sol.energy = mirrored.energy;
  sol.level_energy = mirrored.level_energy;
  return sol;
}

inline StackedSolution solve_maximal(const WeightedDomainGraph& graph, const ProblemData& data, int levels,
                                     const SolveOptions& opts = {}) {
  require_feasible(graph, data);
  return solve_maximal(graph, data, make_level_grid(graph, data, levels), opts);
}

struct Comparison {
  bool dominated = true;
  std::vector<std::pair<std::size_t, double>> violations;  // (vertex, u1 - u2)
};

/// u1 <= u2 + 1e-12 at every closure vertex.
inline Comparison compare(const StackedSolution& u1, const StackedSolution& u2) {
  if (u1.values.size() != u2.values.size()) throw InvalidParameter("solutions live on different graphs");
  if (!(u1.grid == u2.grid)) throw InvalidParameter("solutions use different level grids");
  Comparison c;
  for (std::size_t v = 0; v < u1.values.size(); ++v) {
    const double a = u1.values[v], b = u2.values[v];
    if (std::isnan(a) || std::isnan(b)) continue;
    if (a > b + 1e-12) c.violations.emplace_back(v, a - b);
  }
  c.dominated = c.violations.empty();
  return c;
}

enum class Side { Below, Above };

struct StabilityReport {
  Side side = Side::Below;
  LevelGrid grid;
  std::vector<double> distances;  // sum over interior of measure * |u_j - u_ref|
  bool distances_nonincreasing = true;
  bool monotone = true;           // pointwise u_j <= u_{j+1} <= u_ref (mirrored above), Delta slack
  double quantization_floor = 0.0;  // delta * interior measure
  StackedSolution reference;
};

/// Solves along a monotone boundary sequence approaching data.f and reports
/// measure-weighted L1 distances to the Dirichlet solution for f.
///  Below: problem j has band [seq_j, f], minimal solutions, seq_j ↑ f.
///  Above: problem k has band [f, seq_k], maximal solutions, seq_k ↓ f.
/// All problems share one level grid so the solutions are comparable.
inline StabilityReport stability_run(const WeightedDomainGraph& graph, const ProblemData& data,
                                     const std::vector<std::vector<double>>& sequence, Side side, int levels,
                                     const SolveOptions& opts = {}) {
  if (sequence.empty()) throw InvalidParameter("empty approximating sequence");
  const VertexSet boundary = graph.with_role(Role::Boundary);
  for (std::size_t j = 0; j < sequence.size(); ++j) {
    if (sequence[j].size() != graph.size()) throw InvalidParameter("sequence term does not cover the graph");
    for (auto z : boundary.indices()) {
      const double cur = sequence[j][z];
      const double next = j + 1 < sequence.size() ? sequence[j + 1][z] : data.f[z];
      const bool ok = side == Side::Below ? (cur <= next && next <= data.f[z]) : (cur >= next && next >= data.f[z]);
      if (!ok) throw InvalidParameter("approximating sequence is not monotone at term " + std::to_string(j));
    }
  }

  auto problem_for = [&](const std::vector<double>& b) {
    ProblemData p = data;
    p.f = side == Side::Below ? b : data.f;
    p.g = side == Side::Below ? data.f : b;
    return p;
  };
  ProblemData reference_data = data;
  reference_data.g = data.f;

  std::vector<ProblemData> problems;
  for (const auto& b : sequence) problems.push_back(problem_for(b));
  auto [lo, hi] = level_bounds(graph, reference_data);
  std::vector<double> values = data_values(graph, reference_data);
  for (const auto& p : problems) {
    require_feasible(graph, p);
    const auto [l, h] = level_bounds(graph, p);
    lo = std::min(lo, l);
    hi = std::max(hi, h);
    const auto vs = data_values(graph, p);
    values.insert(values.end(), vs.begin(), vs.end());
  }

  StabilityReport report;
  report.side = side;
  report.grid = make_level_grid(lo, hi, levels, values);
  auto solve = [&](const ProblemData& p) {
    return side == Side::Below ? solve_minimal(graph, p, report.grid, opts) : solve_maximal(graph, p, report.grid, opts);
  };
  report.reference = solve(reference_data);

  const VertexSet interior = graph.with_role(Role::Interior);
  const VertexSet closure = region(graph, RegionKind::OmegaClosure).members;
  double interior_measure = 0.0;
  for (auto v : interior.indices()) interior_measure += graph.vertex(v).measure;
  const double delta = report.grid.delta();
  report.quantization_floor = delta * interior_measure;

  std::vector<double> previous;
  for (const auto& p : problems) {
    auto sol = solve(p);
    double dist = 0.0;
    for (auto v : interior.indices()) dist += graph.vertex(v).measure * std::abs(sol.values[v] - report.reference.values[v]);
    if (!report.distances.empty() && dist > report.distances.back() + 1e-12 * std::max(1.0, dist))
      report.distances_nonincreasing = false;
    report.distances.push_back(dist);
    for (auto v : closure.indices()) {
      const double u = sol.values[v], ref = report.reference.values[v];
      const bool below_ref = side == Side::Below ? u <= ref + delta : u >= ref - delta;
      const bool after_prev = previous.empty() || (side == Side::Below ? previous[v] <= u + delta : previous[v] >= u - delta);
      if (!below_ref || !after_prev) report.monotone = false;
    }
    previous = std::move(sol.values);
  }
  return report;
}

}  // namespace lgsolve
