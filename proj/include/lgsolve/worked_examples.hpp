#pragma once

// The two worked instances: overlapping boundary bands on the unit disc, and
// a weighted interval whose density dips to 1/2 at the origin.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "lgsolve/cut_solver.hpp"
#include "lgsolve/graph_domain.hpp"
#include "lgsolve/level_solver.hpp"

namespace lgsolve::worked {

struct DiscInstance {
  WeightedDomainGraph graph;
  ProblemData data;
};

/// Unit-disc grid with f(x, y) = y and g(x, y) = y + 1 on the boundary.
inline DiscInstance disc_instance(double h, double radius = 1.0) {
  auto graph = build_grid_disc(radius, h);
  auto data = ProblemData::from_boundary(graph, [](double, double y) { return y; },
                                         [](double, double y) { return y + 1.0; });
  return DiscInstance{std::move(graph), std::move(data)};
}

/// Minimal solution for the disc bands in closed form.
inline double disc_closed_form(double y) {
  if (y < -0.5) return y + 1.0;
  if (y <= 0.5) return 0.5;
  return y;
}

/// Density |x|/2 + 1/2 on [-1, 1], 1 outside.
inline double interval_density(double x) { return std::abs(x) <= 1.0 ? 0.5 * std::abs(x) + 0.5 : 1.0; }

struct PathInstance {
  std::shared_ptr<const WeightedDomainGraph> graph;  // problem.graph points here
  CutProblem problem;
  double spacing = 0.0;
};

/// Samples the density at spacing h on [-(1.5 + r), 1.5 + r] with interior
/// (-1, 1). Every non-interior vertex is pinned to the indicator of the ball
/// (1 - r, 1 + r); energy is counted on every edge. The minimal cut side is
/// the minimal weak solution set for that Dirichlet datum.
inline PathInstance weighted_path_instance(double r, double h) {
  if (!(r > 0.0) || !(h > 0.0)) throw InvalidParameter("r and h must be positive");
  if (!(h < 0.5)) throw InvalidParameter("spacing must be below 0.5");
  const long unit = std::lround(1.0 / h);
  const long ball = std::lround(r / h);
  const long half = std::lround((1.5 + r) / h);
  const std::size_t n = static_cast<std::size_t>(2 * half + 1);
  std::vector<double> weights(n);
  for (std::size_t k = 0; k < n; ++k) weights[k] = interval_density((static_cast<long>(k) - half) * h);
  auto owned = std::make_shared<const WeightedDomainGraph>(build_weighted_path(
      weights, static_cast<std::size_t>(half - unit + 1), static_cast<std::size_t>(half + unit - 1), h,
      static_cast<double>(-half) * h));
  const auto& graph = *owned;

  VertexSet in(n), out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (graph.role(k) == Role::Interior) continue;
    const long offset = static_cast<long>(k) - half - unit;  // lattice distance from x = 1
    (std::labs(offset) < ball ? in : out).insert(k);
  }
  Region everything = region(graph, RegionKind::OmegaEps, static_cast<int>(n));
  auto problem = make_cut_problem(graph, std::move(everything), std::move(in), std::move(out));
  return PathInstance{std::move(owned), std::move(problem), h};
}

/// Smallest and largest coordinate of a member set on a path graph.
inline std::pair<double, double> support_extent(const WeightedDomainGraph& graph, const VertexSet& s) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (auto v : s.indices()) {
    const double x = (*graph.vertex(v).pos)[0];
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return {lo, hi};
}

}  // namespace lgsolve::worked
