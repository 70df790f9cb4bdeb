#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>

#include "lgsolve/io.hpp"
#include "lgsolve/lgsolve.hpp"

using namespace lgsolve;
namespace fs = std::filesystem;

namespace {

const fs::path kSamples = LGSOLVE_SAMPLES_DIR;

io::json sample() { return io::parse_json(io::read_text(kSamples / "path5.json"), "path5.json"); }

}  // namespace

TEST(GraphJson, RoundTrip) {
  const auto g = build_grid_disc(1.0, 0.25);
  const auto j = io::graph_to_json(g);
  const auto back = io::graph_from_json(j);
  ASSERT_EQ(back.size(), g.size());
  ASSERT_EQ(back.edges().size(), g.edges().size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    EXPECT_EQ(back.vertex(v).id, g.vertex(v).id);
    EXPECT_EQ(back.role(v), g.role(v));
    EXPECT_DOUBLE_EQ(back.vertex(v).measure, g.vertex(v).measure);
  }
  EXPECT_EQ(io::graph_to_json(back), j);
}

TEST(GraphJson, Errors) {
  EXPECT_THROW(io::parse_json("{not json", "x"), ParseError);
  EXPECT_THROW(io::graph_from_json(io::json{{"vertices", io::json::array()}}), ParseError);
  auto j = sample()["graph"];
  j["vertices"][0]["role"] = "outside";
  EXPECT_THROW(io::graph_from_json(j), ParseError);
  j = sample()["graph"];
  j["edges"][0]["b"] = "nope";
  EXPECT_THROW(io::graph_from_json(j), ParseError);
  j = sample()["graph"];
  j["edges"][0]["w"] = -1.0;
  EXPECT_THROW(io::graph_from_json(j), ParseError);
}

TEST(ProblemJson, LoadsSampleWithInfinities) {
  const auto pf = io::load_problem(kSamples / "path5.json");
  const auto& g = *pf.graph;
  EXPECT_EQ(g.size(), 5U);
  EXPECT_EQ(pf.data.psi1[*g.find("i1")], -kInf);
  EXPECT_EQ(pf.data.psi1[*g.find("i2")], 0.5);
  EXPECT_EQ(pf.data.psi2[*g.find("i3")], kInf);
  EXPECT_EQ(pf.solver.levels, 8);
  EXPECT_EQ(pf.solver.selection, "minimal");
  EXPECT_FALSE(pf.solver.eps_hops);
}

TEST(ProblemJson, RoundTrip) {
  const auto pf = io::problem_from_json(sample());
  const auto j = io::problem_to_json(pf);
  const auto back = io::problem_from_json(j);
  EXPECT_EQ(io::problem_to_json(back), j);
}

TEST(ProblemJson, MissingBoundaryValueNamesTheVertex) {
  auto j = sample();
  j["data"]["g"].erase("b4");
  try {
    io::problem_from_json(j);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("b4"), std::string::npos);
  }
}

TEST(ProblemJson, PartialObstacleMapsDefaultToInfinity) {
  auto j = sample();
  j["data"]["psi1"] = {{"i2", 0.5}};
  j["data"].erase("psi2");
  const auto pf = io::problem_from_json(j);
  const auto& g = *pf.graph;
  EXPECT_EQ(pf.data.psi1[*g.find("i1")], -kInf);
  EXPECT_EQ(pf.data.psi1[*g.find("i2")], 0.5);
  EXPECT_EQ(pf.data.psi2[*g.find("i2")], kInf);
}

TEST(ProblemJson, RejectsBadSolverSettings) {
  auto j = sample();
  j["solver"]["levels"] = 0;
  EXPECT_THROW(io::problem_from_json(j), ParseError);
  j = sample();
  j["solver"]["selection"] = "median";
  EXPECT_THROW(io::problem_from_json(j), ParseError);
  j = sample();
  j["data"]["psi1"]["b0"] = 1.0;  // wrong role
  EXPECT_THROW(io::problem_from_json(j), ParseError);
}

TEST(ProblemJson, GraphByRelativePath) {
  const auto dir = fs::temp_directory_path() / "lgsolve_io_test";
  fs::create_directories(dir);
  auto j = sample();
  io::write_text(dir / "graph.json", io::dump(j["graph"]));
  j["graph"] = "graph.json";
  io::write_text(dir / "problem.json", io::dump(j));
  const auto pf = io::load_problem(dir / "problem.json");
  EXPECT_EQ(pf.graph->size(), 5U);
  EXPECT_EQ(pf.graph_path, "graph.json");
  fs::remove_all(dir);
}

TEST(SolutionJson, RoundTripAndDeterminism) {
  const auto pf = io::problem_from_json(sample());
  const auto sol = solve_minimal(*pf.graph, pf.data, pf.solver.levels);
  const auto rec = io::make_record(*pf.graph, sol, 0.0);
  const auto text = io::dump(io::solution_to_json(rec));
  EXPECT_EQ(io::solution_from_json(io::parse_json(text, "solution")), rec);
  const auto again = solve_minimal(*pf.graph, pf.data, pf.solver.levels);
  EXPECT_EQ(io::dump(io::solution_to_json(io::make_record(*pf.graph, again, 0.0))), text);
  EXPECT_NEAR(rec.energy, 1.75, 1e-12);
}

TEST(Format, RoundsToTwelveDigits) {
  EXPECT_EQ(io::round12(0.1 + 0.2), 0.3);
  EXPECT_EQ(io::format12(std::nan("")), "nan");
}

TEST(FieldExport, MatrixForGridGraphs) {
  const auto inst = worked::disc_instance(0.5);
  const auto sol = solve_minimal(inst.graph, inst.data, 4);
  std::ostringstream os;
  io::write_field_matrix(inst.graph, sol.values, os);
  std::istringstream in(os.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  int jmin = 0, jmax = 0;
  for (const auto& p : inst.graph.layout()->lattice) {
    jmin = std::min(jmin, p[1]);
    jmax = std::max(jmax, p[1]);
  }
  EXPECT_EQ(rows, jmax - jmin + 1);
  EXPECT_NE(os.str().find("nan"), std::string::npos);
}

TEST(FieldExport, CsvForOtherGraphs) {
  const auto pf = io::problem_from_json(sample());
  const auto sol = solve_minimal(*pf.graph, pf.data, 8);
  std::ostringstream os;
  io::write_vertex_csv(*pf.graph, sol.values, os);
  EXPECT_EQ(os.str().rfind("id,x,y,value\n", 0), 0U);
  EXPECT_THROW(io::write_field_matrix(*pf.graph, sol.values, os), InvalidParameter);
}
