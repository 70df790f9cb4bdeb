#pragma once

// Seeded property suites over random instances. Each suite reports one
// pass count per property; a suite passes when every property does.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lgsolve/cut_solver.hpp"
#include "lgsolve/graph_domain.hpp"
#include "lgsolve/level_solver.hpp"
#include "lgsolve/oracle.hpp"
#include "lgsolve/random_instances.hpp"
#include "lgsolve/stacker.hpp"

namespace lgsolve::suites {

struct PropertyResult {
  std::string name;
  int passed = 0;
  int total = 0;
  std::vector<std::string> failures;  // first few failure descriptions

  bool ok() const { return passed == total; }
  void record(bool pass, const std::string& detail = {}) {
    ++total;
    if (pass) ++passed;
    else if (failures.size() < 5) failures.push_back(detail);
  }
};

struct SuiteReport {
  std::string name;
  std::vector<PropertyResult> properties;

  bool ok() const {
    return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.ok(); });
  }
  PropertyResult& property(const std::string& pname) {
    for (auto& p : properties)
      if (p.name == pname) return p;
    properties.push_back(PropertyResult{pname, 0, 0, {}});
    return properties.back();
  }
};

inline bool relative_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline std::string instance_tag(std::uint64_t seed, int i) {
  return "seed " + std::to_string(seed) + " instance " + std::to_string(i);
}

namespace detail {

inline random::GraphShape random_shape(random::Rng& rng, int max_interior, int max_boundary, int max_exterior) {
  random::GraphShape s;
  s.interior = static_cast<int>(random::pick(rng, 1, static_cast<std::size_t>(max_interior)));
  s.boundary = static_cast<int>(random::pick(rng, 1, static_cast<std::size_t>(max_boundary)));
  s.exterior = static_cast<int>(random::pick(rng, 0, static_cast<std::size_t>(max_exterior)));
  s.extra_edge_probability = 0.1 + 0.4 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return s;
}

inline LevelGrid shared_grid(const WeightedDomainGraph& g, const std::vector<const ProblemData*>& problems, int levels) {
  auto [lo, hi] = level_bounds(g, *problems.front());
  std::vector<double> values;
  for (const auto* p : problems) {
    const auto [l, h] = level_bounds(g, *p);
    lo = std::min(lo, l);
    hi = std::max(hi, h);
    const auto vs = data_values(g, *p);
    values.insert(values.end(), vs.begin(), vs.end());
  }
  return make_level_grid(lo, hi, levels, values);
}

/// Coarea identity and nesting checks shared by every stacked solve.
inline void check_stack(SuiteReport& rep, const StackedSolution& sol, const std::string& tag) {
  rep.property("coarea identity").record(relative_close(sol.energy, sol.level_energy, 1e-9), tag);
  bool nested = true;
  for (std::size_t i = 1; i < sol.level_sets.size(); ++i)
    nested = nested && sol.level_sets[i].members.is_subset_of(sol.level_sets[i - 1].members);
  rep.property("nesting without repair").record(nested && sol.repairs == 0, tag);
}

}  // namespace detail

/// Ordered data yields pointwise ordered minimal and maximal solutions.
inline SuiteReport comparison_suite(std::uint64_t seed, int count) {
  SuiteReport rep{"comparison", {}};
  random::Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const auto tag = instance_tag(seed, i);
    auto g = random::random_domain_graph(rng, detail::random_shape(rng, 20, 8, 4));
    auto lower = random::random_problem_data(rng, g);
    auto upper = random::raise_data(rng, g, lower);
    const auto grid = detail::shared_grid(g, {&lower, &upper}, 16);
    const auto min1 = solve_minimal(g, lower, grid), min2 = solve_minimal(g, upper, grid);
    const auto max1 = solve_maximal(g, lower, grid), max2 = solve_maximal(g, upper, grid);
    rep.property("minimal solutions dominated").record(compare(min1, min2).dominated, tag);
    rep.property("maximal solutions dominated").record(compare(max1, max2).dominated, tag);
    rep.property("minimal below maximal").record(compare(min1, max1).dominated && compare(min2, max2).dominated, tag);
    for (const auto* s : {&min1, &min2, &max1, &max2}) detail::check_stack(rep, *s, tag);
  }
  return rep;
}

/// Monotone boundary approximations from below (minimal solutions) and above
/// (maximal solutions) converge to the Dirichlet solution.
inline SuiteReport stability_suite(std::uint64_t seed, int count) {
  SuiteReport rep{"stability", {}};
  random::Rng rng(seed);
  constexpr int terms = 20;
  for (int i = 0; i < count; ++i) {
    const auto tag = instance_tag(seed, i);
    auto g = random::random_domain_graph(rng, detail::random_shape(rng, 16, 8, 2));
    auto data = random::random_problem_data(rng, g);
    const double c = random::dyadic(rng, 1, 8);
    std::vector<std::vector<double>> below, above;
    for (int j = 1; j <= terms; ++j) {
      auto lo = data.f, hi = data.f;
      const double offset = c / (j * j);
      for (std::size_t v = 0; v < g.size(); ++v)
        if (g.role(v) == Role::Boundary) {
          lo[v] -= offset;
          hi[v] += offset;
        }
      below.push_back(std::move(lo));
      above.push_back(std::move(hi));
    }
    for (auto side : {Side::Below, Side::Above}) {
      const auto rep_run = stability_run(g, data, side == Side::Below ? below : above, side, 24);
      const std::string label = side == Side::Below ? " (below)" : " (above)";
      rep.property("distances nonincreasing" + label).record(rep_run.distances_nonincreasing, tag);
      rep.property("monotone pointwise" + label).record(rep_run.monotone, tag);
      rep.property("final distance within quantization floor" + label)
          .record(rep_run.distances.back() <= rep_run.quantization_floor + 1e-12, tag);
    }
  }
  return rep;
}

/// Minimizer families are lattices, the cut solver matches enumeration,
/// and perimeter is submodular.
inline SuiteReport lattice_suite(std::uint64_t seed, int count, int pairs_per_instance = 10) {
  SuiteReport rep{"lattice", {}};
  random::Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const auto tag = instance_tag(seed, i);
    auto g = random::random_domain_graph(rng, detail::random_shape(rng, 7, 5, 4));
    auto problem = random::random_cut_problem(rng, g, 12);
    const auto fam = oracle::brute_min_perimeter(problem);
    const auto cut = solve_cut(problem);
    rep.property("minimizer family closed under intersection and union").record(oracle::lattice_closed(problem, fam), tag);
    rep.property("flow value equals enumerated optimum").record(relative_close(cut.flow_value, fam.value, 1e-9), tag);
    rep.property("minimal cut side equals enumerated intersection").record(cut.minimal.members == fam.minimal, tag);
    rep.property("maximal cut side equals enumerated union").record(cut.maximal.members == fam.maximal, tag);

    for (int k = 0; k < pairs_per_instance; ++k) {
      VertexSet s(g.size()), t(g.size());
      for (std::size_t v = 0; v < g.size(); ++v) {
        s.set(v, random::coin(rng, 0.5));
        t.set(v, random::coin(rng, 0.5));
      }
      const double lhs = perimeter(g, s & t, problem.region) + perimeter(g, s | t, problem.region);
      const double rhs = perimeter(g, s, problem.region) + perimeter(g, t, problem.region);
      rep.property("perimeter submodularity").record(lhs <= rhs + 1e-12, tag);
    }
  }
  return rep;
}

/// The eps-weak energy lambda(k) never decreases as the hop radius grows.
inline SuiteReport eps_monotone_suite(std::uint64_t seed, int count, int max_hops = 4) {
  SuiteReport rep{"eps-monotone", {}};
  random::Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const auto tag = instance_tag(seed, i);
    auto shape = detail::random_shape(rng, 12, 6, 8);
    shape.exterior = std::max(shape.exterior, 2);
    auto g = random::random_domain_graph(rng, shape);
    auto data = random::random_problem_data(rng, g);
    const double t = random::eighths(rng, 8) + 1.0 / 16.0;
    double previous = -1.0;
    bool monotone = true;
    for (int k = 1; k <= max_hops; ++k) {
      const auto eps = solve_eps_weak(g, data, t, k);
      if (eps.lambda < previous - 1e-12) monotone = false;
      previous = eps.lambda;
    }
    rep.property("lambda nondecreasing in hop radius").record(monotone, tag);
  }
  return rep;
}

/// Without obstacles, when inf f < inf g <= sup f < sup g the minimal
/// solution stays inside [inf g, sup f] up to one quantization step.
inline SuiteReport band_suite(std::uint64_t seed, int count) {
  SuiteReport rep{"band", {}};
  random::Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const auto tag = instance_tag(seed, i);
    std::optional<WeightedDomainGraph> g;
    ProblemData data;
    double inf_f = 0, sup_f = 0, inf_g = 0, sup_g = 0;
    for (int attempt = 0;; ++attempt) {
      auto shape = detail::random_shape(rng, 20, 10, 3);
      shape.boundary = std::max(shape.boundary, 3);
      g.emplace(random::random_domain_graph(rng, shape));
      data = random::random_problem_data(rng, *g, random::DataShape{0.0, 8});
      inf_f = inf_g = kInf;
      sup_f = sup_g = -kInf;
      for (auto z : g->with_role(Role::Boundary).indices()) {
        inf_f = std::min(inf_f, data.f[z]);
        sup_f = std::max(sup_f, data.f[z]);
        inf_g = std::min(inf_g, data.g[z]);
        sup_g = std::max(sup_g, data.g[z]);
      }
      if (inf_f < inf_g && inf_g <= sup_f && sup_f < sup_g) break;
      if (attempt > 10000) throw InternalError("could not draw band data");
    }
    const auto sol = solve_minimal(*g, data, 32);
    const double delta = sol.grid.delta();
    bool inside = true;
    for (auto v : g->with_role(Role::Interior).indices())
      inside = inside && sol.values[v] >= inf_g - delta - 1e-12 && sol.values[v] <= sup_f + delta + 1e-12;
    rep.property("interior values within [inf g, sup f] up to delta").record(inside, tag);
    detail::check_stack(rep, sol, tag);
  }
  return rep;
}

/// Stacked minimal solutions equal the pointwise-least TV minimizer found by
/// exhaustive enumeration over grid-valued admissible functions.
inline SuiteReport oracle_suite(std::uint64_t seed, int count) {
  SuiteReport rep{"oracle", {}};
  random::Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const auto tag = instance_tag(seed, i);
    std::optional<WeightedDomainGraph> g;
    ProblemData data;
    std::optional<LevelGrid> grid;
    while (!grid) {
      random::GraphShape shape;
      shape.interior = static_cast<int>(random::pick(rng, 1, 4));
      shape.boundary = static_cast<int>(random::pick(rng, 1, static_cast<std::size_t>(6 - shape.interior)));
      shape.exterior = static_cast<int>(random::pick(rng, 0, 2));
      shape.extra_edge_probability = 0.4;
      g.emplace(random::random_domain_graph(rng, shape));
      data = random::random_problem_data(rng, *g, random::DataShape{0.4, 8});
      const int levels = static_cast<int>(random::pick(rng, 1, 4));
      auto candidate = make_level_grid(*g, data, levels);
      if (candidate.levels <= 4) grid = candidate;
    }
    const auto sol = solve_minimal(*g, data, *grid);
    const auto best = oracle::brute_min_tv(*g, data, *grid);
    bool same = true;
    for (std::size_t v = 0; v < g->size(); ++v) {
      const double a = sol.values[v], b = best.pointwise_minimal[v];
      if (std::isnan(a) != std::isnan(b) || (!std::isnan(a) && a != b)) same = false;
    }
    rep.property("stacked minimal equals pointwise-least enumerated optimum").record(same, tag);
    rep.property("energy equals enumerated optimum").record(relative_close(sol.energy, best.energy, 1e-9), tag);
    detail::check_stack(rep, sol, tag);
  }
  return rep;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"comparison", "stability", "lattice", "eps-monotone", "band", "oracle"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed, int count) {
  if (name == "comparison") return comparison_suite(seed, count);
  if (name == "stability") return stability_suite(seed, count);
  if (name == "lattice") return lattice_suite(seed, count);
  if (name == "eps-monotone") return eps_monotone_suite(seed, count);
  if (name == "band") return band_suite(seed, count);
  if (name == "oracle") return oracle_suite(seed, count);
  throw InvalidParameter("unknown suite '" + name + "'");
}

inline std::string format_report(const SuiteReport& rep) {
  std::ostringstream os;
  for (const auto& p : rep.properties) {
    os << (p.ok() ? "PASS " : "FAIL ") << rep.name << ": " << p.name << " " << p.passed << "/" << p.total << "\n";
    for (const auto& f : p.failures) os << "    failed on " << f << "\n";
  }
  return os.str();
}

}  // namespace lgsolve::suites
