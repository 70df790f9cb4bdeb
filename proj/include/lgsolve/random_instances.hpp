#pragma once

// Seeded generators of small domain graphs, problem data and cut problems
// for the property suites and tests.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lgsolve/cut_solver.hpp"
#include "lgsolve/graph_domain.hpp"
#include "lgsolve/level_solver.hpp"

namespace lgsolve::random {

using Rng = std::mt19937_64;

struct GraphShape {
  int interior = 4;
  int boundary = 3;
  int exterior = 2;
  double extra_edge_probability = 0.3;
};

/// Dyadic weights keep perimeter sums exact in floating point.
inline double dyadic(Rng& rng, int lo_quarters, int hi_quarters) {
  std::uniform_int_distribution<int> d(lo_quarters, hi_quarters);
  return d(rng) / 4.0;
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> d(lo, hi);
  return d(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Interior vertices come first (a random tree plus extra edges), then
/// boundary vertices each tied to at least one interior vertex, then
/// exterior vertices tied to boundary or earlier exterior vertices.
inline WeightedDomainGraph random_domain_graph(Rng& rng, const GraphShape& shape) {
  const auto ni = static_cast<std::size_t>(std::max(1, shape.interior));
  const auto nb = static_cast<std::size_t>(std::max(1, shape.boundary));
  const auto ne = static_cast<std::size_t>(std::max(0, shape.exterior));
  std::vector<Vertex> vs;
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  auto add = [&](Role r, std::size_t k) {
    const std::string prefix = r == Role::Interior ? "i" : r == Role::Boundary ? "b" : "e";
    vs.push_back(Vertex{prefix + std::to_string(k), r, dyadic(rng, 1, 8), Point{coord(rng), coord(rng)}});
  };
  for (std::size_t k = 0; k < ni; ++k) add(Role::Interior, k);
  for (std::size_t k = 0; k < nb; ++k) add(Role::Boundary, k);
  for (std::size_t k = 0; k < ne; ++k) add(Role::Exterior, k);

  std::vector<Edge> es;
  std::vector<std::vector<std::uint8_t>> linked(vs.size(), std::vector<std::uint8_t>(vs.size(), 0));
  auto link = [&](std::size_t a, std::size_t b) {
    if (a == b || linked[a][b]) return;
    linked[a][b] = linked[b][a] = 1;
    es.push_back(Edge{a, b, dyadic(rng, 1, 12)});
  };
  const std::size_t b0 = ni, e0 = ni + nb;
  for (std::size_t v = 1; v < ni; ++v) link(v, pick(rng, 0, v - 1));
  for (std::size_t v = b0; v < e0; ++v) link(v, pick(rng, 0, ni - 1));
  for (std::size_t v = e0; v < e0 + ne; ++v) link(v, pick(rng, b0, v - 1));
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      const bool forbidden = (vs[a].role == Role::Interior && vs[b].role == Role::Exterior);
      if (!forbidden && coin(rng, shape.extra_edge_probability)) link(a, b);
    }
  return WeightedDomainGraph(std::move(vs), std::move(es));
}

struct DataShape {
  double obstacle_probability = 0.3;  // chance an interior vertex gets a finite psi1 / psi2
  int value_range_eighths = 8;        // values are multiples of 1/8 in [-range, range]
};

inline double eighths(Rng& rng, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  return d(rng) / 8.0;
}

/// Feasible data: f <= g on the boundary, psi1 <= psi2 inside, with
/// occasional infinite obstacles.
inline ProblemData random_problem_data(Rng& rng, const WeightedDomainGraph& graph, const DataShape& shape = {}) {
  auto d = ProblemData::unconstrained(graph);
  const int r = shape.value_range_eighths;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (graph.role(v) == Role::Boundary) {
      const double a = eighths(rng, r), b = eighths(rng, r);
      d.f[v] = std::min(a, b);
      d.g[v] = std::max(a, b);
    } else if (graph.role(v) == Role::Interior) {
      const double a = eighths(rng, r), b = eighths(rng, r);
      if (coin(rng, shape.obstacle_probability)) d.psi1[v] = std::min(a, b);
      if (coin(rng, shape.obstacle_probability)) d.psi2[v] = std::max(a, b);
    }
  }
  return d;
}

/// Data dominating `base` in all four functions and still feasible.
inline ProblemData raise_data(Rng& rng, const WeightedDomainGraph& graph, const ProblemData& base, int range_eighths = 4) {
  ProblemData d = base;
  auto bump = [&] { return std::uniform_int_distribution<int>(0, range_eighths)(rng) / 8.0; };
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (graph.role(v) == Role::Boundary) {
      d.f[v] = base.f[v] + bump();
      d.g[v] = std::max(base.g[v] + bump(), d.f[v]);
    } else if (graph.role(v) == Role::Interior) {
      d.psi1[v] = base.psi1[v] + bump();
      d.psi2[v] = std::max(base.psi2[v] + bump(), d.psi1[v]);
    }
  }
  return d;
}

/// Random cut problem whose free-vertex count stays within max_free.
inline CutProblem random_cut_problem(Rng& rng, const WeightedDomainGraph& graph, int max_free) {
  Region reg;
  switch (pick(rng, 0, 3)) {
    case 0: reg = region(graph, RegionKind::OmegaOnly); break;
    case 1: reg = region(graph, RegionKind::OmegaClosure); break;
    case 2: reg = region(graph, RegionKind::OmegaEps, 1); break;
    default: reg = region(graph, RegionKind::OmegaEps, 2); break;
  }
  const VertexSet support = region_support(graph, reg);
  VertexSet in(graph.size()), out(graph.size());
  auto members = support.indices();
  std::shuffle(members.begin(), members.end(), rng);
  std::size_t free_left = members.size();
  for (auto v : members) {
    const bool must_fix = free_left > static_cast<std::size_t>(max_free);
    const double p = must_fix ? 1.0 : 0.35;
    if (coin(rng, p)) {
      (coin(rng, 0.5) ? in : out).insert(v);
      --free_left;
    }
  }
  return make_cut_problem(graph, std::move(reg), std::move(in), std::move(out));
}

}  // namespace lgsolve::random
