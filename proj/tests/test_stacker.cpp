#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lgsolve/oracle.hpp"
#include "lgsolve/random_instances.hpp"
#include "lgsolve/stacker.hpp"
#include "lgsolve/worked_examples.hpp"

using namespace lgsolve;

TEST(LevelGrid, ThresholdsAvoidDataValues) {
  const auto grid = make_level_grid(0.0, 1.0, 2, {0.25, 0.75});
  // N = 2 would put thresholds exactly on 0.25 and 0.75.
  EXPECT_EQ(grid.levels, 3);
  for (double t : grid.thresholds()) {
    EXPECT_NE(t, 0.25);
    EXPECT_NE(t, 0.75);
  }
}

TEST(LevelGrid, DegenerateRangeIsWidened) {
  const auto grid = make_level_grid(2.0, 2.0, 4, {2.0});
  EXPECT_EQ(grid.lower, 2.0);
  EXPECT_EQ(grid.upper, 3.0);
}

TEST(LevelGrid, RejectsBadParameters) {
  EXPECT_THROW(make_level_grid(0.0, 1.0, 0, {}), InvalidParameter);
  EXPECT_THROW(make_level_grid(1.0, 0.0, 4, {}), InvalidParameter);
}

TEST(LevelGrid, ReflectionNegatesThresholds) {
  const LevelGrid grid{-0.5, 1.5, 8};
  const auto a = grid.thresholds();
  const auto b = grid.reflected().thresholds();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_DOUBLE_EQ(a[i], -b[b.size() - 1 - i]);
}

TEST(Stacker, ThreeVertexPath) {
  const std::vector<double> w{1, 1, 1};
  const auto g = build_weighted_path(w, 1, 1);
  auto d = ProblemData::unconstrained(g);
  d.f[0] = d.g[0] = 0.0;
  d.f[2] = d.g[2] = 1.0;
  const auto sol = solve_minimal(g, d, 4);
  EXPECT_DOUBLE_EQ(sol.values[0], 0.0);
  EXPECT_DOUBLE_EQ(sol.values[2], 1.0);
  // Any middle value in [0, 1] is optimal; the minimal one is 0.
  EXPECT_DOUBLE_EQ(sol.values[1], 0.0);
  EXPECT_DOUBLE_EQ(sol.energy, 1.0);
  const auto max = solve_maximal(g, d, 4);
  EXPECT_DOUBLE_EQ(max.values[1], 1.0);
  EXPECT_DOUBLE_EQ(max.energy, 1.0);
}

TEST(Stacker, ObstacleLiftsTheSolution) {
  const std::vector<double> w{1, 1, 1, 1, 1};
  const auto g = build_weighted_path(w, 1, 3);
  auto d = ProblemData::unconstrained(g);
  d.f[0] = d.g[0] = 0.0;
  d.f[4] = d.g[4] = 0.0;
  d.psi1[2] = 1.0;
  const auto sol = solve_minimal(g, d, 4);
  EXPECT_DOUBLE_EQ(sol.values[2], 1.0);
  EXPECT_DOUBLE_EQ(sol.values[1], 0.0);
  EXPECT_DOUBLE_EQ(sol.energy, 2.0);
}

TEST(Stacker, InfeasibleDataIsRejected) {
  const std::vector<double> w{1, 1, 1};
  const auto g = build_weighted_path(w, 1, 1);
  auto d = ProblemData::unconstrained(g);
  d.f[0] = 1.0, d.g[0] = 0.0;
  d.f[2] = d.g[2] = 1.0;
  EXPECT_THROW(solve_minimal(g, d, 4), InfeasibleConstraints);
  EXPECT_THROW(solve_maximal(g, d, 4), InfeasibleConstraints);
}

TEST(Stacker, DiscMatchesClosedForm) {
  const auto inst = worked::disc_instance(0.1);
  const auto sol = solve_minimal(inst.graph, inst.data, 20);
  const auto& g = inst.graph;
  for (auto v : g.with_role(Role::Interior).indices())
    EXPECT_NEAR(sol.values[v], worked::disc_closed_form((*g.vertex(v).pos)[1]), 0.1 + sol.grid.delta())
        << g.vertex(v).id;
  for (auto v : g.with_role(Role::Boundary).indices()) {
    EXPECT_GE(sol.values[v], inst.data.f[v] - sol.grid.delta());
    EXPECT_LE(sol.values[v], inst.data.g[v] + sol.grid.delta());
  }
  EXPECT_EQ(sol.repairs, 0);
  EXPECT_NEAR(sol.energy, sol.level_energy, 1e-9 * sol.energy);
}

TEST(Stacker, ThreadedSolveIsIdentical) {
  const auto inst = worked::disc_instance(0.1);
  const auto one = solve_minimal(inst.graph, inst.data, 16);
  const auto four = solve_minimal(inst.graph, inst.data, 16, SolveOptions{4});
  EXPECT_EQ(one.values.size(), four.values.size());
  for (std::size_t v = 0; v < one.values.size(); ++v)
    if (!std::isnan(one.values[v])) { EXPECT_EQ(one.values[v], four.values[v]); }
}

TEST(Stacker, DirichletGridMatchesFunctionEnumeration) {
  // 3x3 interior square with all 12 boundary points pinned.
  const auto g = build_grid_disc(1.5, 1.0);
  ASSERT_EQ(g.with_role(Role::Interior).count(), 9U);
  ASSERT_EQ(g.with_role(Role::Boundary).count(), 12U);
  auto d = ProblemData::from_boundary(g, [](double x, double y) { return x + y > 0 ? 1.0 : 0.0; },
                                      [](double x, double y) { return x + y > 0 ? 1.0 : 0.0; });
  const auto grid = make_level_grid(g, d, 3);
  const auto sol = solve_minimal(g, d, grid);
  oracle::OracleBudget budget;
  budget.max_function_vertices = 9;
  const auto best = oracle::brute_min_tv(g, d, grid, budget);
  EXPECT_NEAR(sol.energy, best.energy, 1e-9);
  for (std::size_t v = 0; v < g.size(); ++v)
    if (!std::isnan(best.pointwise_minimal[v])) { EXPECT_NEAR(sol.values[v], best.pointwise_minimal[v], 1e-12); }
}

TEST(Compare, DetectsViolationsAndGridMismatch) {
  const std::vector<double> w{1, 1, 1};
  const auto g = build_weighted_path(w, 1, 1);
  auto d = ProblemData::unconstrained(g);
  d.f[0] = d.g[0] = 0.0;
  d.f[2] = d.g[2] = 1.0;
  const auto grid = make_level_grid(g, d, 4);
  const auto lo = solve_minimal(g, d, grid);
  const auto hi = solve_maximal(g, d, grid);
  EXPECT_TRUE(compare(lo, hi).dominated);
  const auto c = compare(hi, lo);
  EXPECT_FALSE(c.dominated);
  ASSERT_EQ(c.violations.size(), 1U);
  EXPECT_EQ(c.violations[0].first, 1U);
  const auto other = solve_minimal(g, d, 8);
  EXPECT_THROW(compare(lo, other), InvalidParameter);
}

TEST(Stability, ConstantSequenceGivesZeroDistances) {
  const auto inst = worked::disc_instance(0.25);
  auto d = inst.data;
  d.g = d.f;
  const std::vector<std::vector<double>> seq(3, d.f);
  const auto rep = stability_run(inst.graph, d, seq, Side::Below, 8);
  for (double x : rep.distances) EXPECT_EQ(x, 0.0);
  EXPECT_TRUE(rep.distances_nonincreasing);
  EXPECT_TRUE(rep.monotone);
}

TEST(Stability, RejectsNonMonotoneSequence) {
  const auto inst = worked::disc_instance(0.25);
  auto below = inst.data.f, further = inst.data.f;
  for (auto& x : below) x -= 0.5;
  for (auto& x : further) x -= 1.0;
  EXPECT_THROW(stability_run(inst.graph, inst.data, {below, further}, Side::Below, 8), InvalidParameter);
  EXPECT_THROW(stability_run(inst.graph, inst.data, {further, below}, Side::Above, 8), InvalidParameter);
  EXPECT_THROW(stability_run(inst.graph, inst.data, {}, Side::Below, 8), InvalidParameter);
}

// Seeded random cross-checks of the two maximal paths, the coarea identity
// and nesting.
class StackProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(StackProperties, MaximalPathsAgreeAndStacksAreConsistent) {
  random::Rng rng(GetParam());
  for (int k = 0; k < 5; ++k) {
    const auto g = random::random_domain_graph(rng, {6, 4, 2, 0.3});
    const auto d = random::random_problem_data(rng, g);
    const auto grid = make_level_grid(g, d, 12);
    const auto via_negation = solve_maximal(g, d, grid);
    const auto via_levels = solve_maximal_by_levels(g, d, grid);
    const auto minimal = solve_minimal(g, d, grid);
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (std::isnan(via_levels.values[v])) {
        EXPECT_TRUE(std::isnan(via_negation.values[v]));
        continue;
      }
      EXPECT_NEAR(via_negation.values[v], via_levels.values[v], 1e-12);
    }
    EXPECT_NEAR(via_negation.energy, minimal.energy, 1e-9 * std::max(1.0, minimal.energy));
    EXPECT_TRUE(compare(minimal, via_negation).dominated);
    for (const auto* s : {&minimal, &via_negation, &via_levels}) {
      EXPECT_EQ(s->repairs, 0);
      EXPECT_NEAR(s->energy, s->level_energy, 1e-9 * std::max(1.0, s->energy));
      for (std::size_t i = 1; i < s->level_sets.size(); ++i)
        EXPECT_TRUE(s->level_sets[i].members.is_subset_of(s->level_sets[i - 1].members));
    }
  }
}

TEST_P(StackProperties, RaisedDataDominates) {
  random::Rng rng(GetParam() + 500);
  for (int k = 0; k < 5; ++k) {
    const auto g = random::random_domain_graph(rng, {6, 4, 2, 0.3});
    const auto d1 = random::random_problem_data(rng, g);
    const auto d2 = random::raise_data(rng, g, d1);
    auto [lo1, hi1] = level_bounds(g, d1);
    auto [lo2, hi2] = level_bounds(g, d2);
    auto values = data_values(g, d1);
    const auto more = data_values(g, d2);
    values.insert(values.end(), more.begin(), more.end());
    const auto grid = make_level_grid(std::min(lo1, lo2), std::max(hi1, hi2), 16, values);
    EXPECT_TRUE(compare(solve_minimal(g, d1, grid), solve_minimal(g, d2, grid)).dominated);
    EXPECT_TRUE(compare(solve_maximal(g, d1, grid), solve_maximal(g, d2, grid)).dominated);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, StackProperties, ::testing::Range<std::uint64_t>(0, 10));
