#include <gtest/gtest.h>

#include <vector>

#include "lgsolve/cut_solver.hpp"
#include "lgsolve/oracle.hpp"
#include "lgsolve/random_instances.hpp"
#include "lgsolve/worked_examples.hpp"

using namespace lgsolve;

namespace {

WeightedDomainGraph unit_path3() {
  const std::vector<double> w{1, 1, 1};
  return build_weighted_path(w, 1, 1);
}

VertexSet set_of(std::size_t n, std::vector<int> idx) { return VertexSet::of(n, idx); }

}  // namespace

TEST(MaxFlow, SingleBottleneck) {
  const auto g = unit_path3();
  const auto p = make_cut_problem(g, region(g, RegionKind::OmegaClosure), set_of(3, {0}), set_of(3, {2}));
  EXPECT_DOUBLE_EQ(max_flow(p), 1.0);
  const auto cut = solve_cut(p);
  EXPECT_EQ(cut.minimal.members, set_of(3, {0}));
  EXPECT_EQ(cut.maximal.members, set_of(3, {0, 1}));
  EXPECT_DOUBLE_EQ(cut.minimal.perimeter_value, 1.0);
  EXPECT_DOUBLE_EQ(cut.maximal.perimeter_value, 1.0);
}

TEST(MaxFlow, NoConstraintsGivesEmptyCut) {
  const auto g = unit_path3();
  const auto p = make_cut_problem(g, region(g, RegionKind::OmegaClosure), VertexSet(3), VertexSet(3));
  EXPECT_EQ(max_flow(p), 0.0);
  EXPECT_TRUE(minimal_cut_side(p).members.empty());
  EXPECT_EQ(maximal_cut_side(p).members.count(), 3U);
}

TEST(MaxFlow, OverlappingConstraintsAreInfeasible) {
  const auto g = unit_path3();
  EXPECT_THROW(make_cut_problem(g, region(g, RegionKind::OmegaClosure), set_of(3, {1}), set_of(3, {1, 2})),
               InfeasibleConstraints);
  CutProblem raw{&g, region(g, RegionKind::OmegaClosure), set_of(3, {1}), set_of(3, {1})};
  EXPECT_THROW(solve_cut(raw), InfeasibleConstraints);
}

TEST(MaxFlow, ConstraintsOutsideSupportAreRejected) {
  const std::vector<double> w(7, 1.0);
  const auto g = build_weighted_path(w, 3, 3);
  // Support of the open region is {2, 3, 4}; vertex 0 is out of reach.
  EXPECT_THROW(make_cut_problem(g, region(g, RegionKind::OmegaOnly), set_of(7, {0}), VertexSet(7)), InvalidParameter);
}

TEST(CutSides, FullyForcedRegions) {
  const std::vector<double> w{1, 2, 3, 2, 1};
  const auto g = build_weighted_path(w, 1, 3);
  const auto closure = region(g, RegionKind::OmegaClosure);
  const auto support = region_support(g, closure);
  const auto all_in = solve_cut(make_cut_problem(g, closure, support, VertexSet(5)));
  EXPECT_EQ(all_in.minimal.members, support);
  EXPECT_EQ(all_in.maximal.members, support);
  const auto all_out = solve_cut(make_cut_problem(g, closure, VertexSet(5), support));
  EXPECT_TRUE(all_out.minimal.members.empty());
  EXPECT_TRUE(all_out.maximal.members.empty());
}

TEST(CutSides, WeightedIntervalCutsAtTheOrigin) {
  const auto inst = worked::weighted_path_instance(0.5, 0.01);
  const auto cut = solve_cut(inst.problem);
  const auto [left, right] = worked::support_extent(*inst.graph, cut.minimal.members);
  EXPECT_NEAR(left, 0.0, 0.02);
  EXPECT_NEAR(right, 1.5, 0.02);
  // Ties between the two edges flanking the origin: minimal starts right of 0.
  EXPECT_GT(left, 0.0);
  EXPECT_LE(cut.minimal.members.count(), cut.maximal.members.count());
}

// Oracle cross-checks on seeded random instances. Expected values come from
// exhaustive enumeration in lgsolve::oracle, which never builds a network.
class CutOracle : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(CutOracle, MatchesEnumeration) {
  random::Rng rng(GetParam());
  for (int k = 0; k < 10; ++k) {
    const auto g = random::random_domain_graph(rng, {5, 4, 3, 0.35});
    const auto p = random::random_cut_problem(rng, g, 12);
    const auto fam = oracle::brute_min_perimeter(p);
    const auto cut = solve_cut(p);
    EXPECT_NEAR(cut.flow_value, fam.value, 1e-9 * std::max(1.0, fam.value));
    EXPECT_EQ(cut.minimal.members, fam.minimal);
    EXPECT_EQ(cut.maximal.members, fam.maximal);
    EXPECT_TRUE(oracle::lattice_closed(p, fam));
    // Duality within 1e-9 relative.
    EXPECT_NEAR(cut.minimal.perimeter_value, cut.flow_value, 1e-9 * std::max(1.0, cut.flow_value));
    EXPECT_NEAR(cut.maximal.perimeter_value, cut.flow_value, 1e-9 * std::max(1.0, cut.flow_value));
    EXPECT_TRUE(cut.minimal.members.is_subset_of(cut.maximal.members));
    EXPECT_TRUE(p.forced_in.is_subset_of(cut.minimal.members));
    EXPECT_FALSE(cut.maximal.members.intersects(p.forced_out));
  }
}

TEST_P(CutOracle, ComplementSymmetryOnWholeGraph) {
  random::Rng rng(GetParam() + 1000);
  for (int k = 0; k < 10; ++k) {
    const auto g = random::random_domain_graph(rng, {5, 4, 3, 0.35});
    const auto everything = omega_eps(g, static_cast<int>(g.size()));
    VertexSet in(g.size()), out(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (random::coin(rng, 0.2)) in.insert(v);
      else if (random::coin(rng, 0.2)) out.insert(v);
    }
    const auto forward = solve_cut(make_cut_problem(g, everything, in, out));
    const auto backward = solve_cut(make_cut_problem(g, everything, out, in));
    EXPECT_EQ(forward.minimal.members, VertexSet::full(g.size()) - backward.maximal.members);
  }
}

TEST_P(CutOracle, ForcingAMinimalMemberChangesNothing) {
  random::Rng rng(GetParam() + 2000);
  for (int k = 0; k < 10; ++k) {
    const auto g = random::random_domain_graph(rng, {5, 4, 3, 0.35});
    auto p = random::random_cut_problem(rng, g, 12);
    const auto before = solve_cut(p);
    const auto extra = before.minimal.members - p.forced_in;
    if (extra.empty()) continue;
    p.forced_in.insert(extra.indices().front());
    const auto after = solve_cut(p);
    EXPECT_EQ(after.minimal.members, before.minimal.members);
    EXPECT_NEAR(after.flow_value, before.flow_value, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CutOracle, ::testing::Range<std::uint64_t>(0, 20));

TEST(FlowNetwork, ParallelPaths) {
  FlowNetwork net(4);
  net.add_arc_pair(0, 1, 3.0, 0.0);
  net.add_arc_pair(0, 2, 2.0, 0.0);
  net.add_arc_pair(1, 3, 2.0, 0.0);
  net.add_arc_pair(2, 3, 3.0, 0.0);
  net.add_arc_pair(1, 2, 1.0, 0.0);
  EXPECT_DOUBLE_EQ(net.max_flow(0, 3), 5.0);
}
