#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "lgsolve/io.hpp"

namespace fs = std::filesystem;
using namespace lgsolve;

namespace {

const std::string kCli = LGSOLVE_CLI;
const fs::path kSamples = LGSOLVE_SAMPLES_DIR;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = "\"" + kCli + "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lgsolve_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return "\"" + (dir_ / name).string() + "\""; }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SolveWritesASolution) {
  const auto r = run("solve \"" + (kSamples / "path5.json").string() + "\" -o " + path("out.json") + " --no-timing");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto rec = io::solution_from_json(io::parse_json(io::read_text(dir_ / "out.json"), "out"));
  EXPECT_EQ(rec.selection, "minimal");
  EXPECT_EQ(rec.values.size(), 5U);
  EXPECT_NEAR(rec.energy, 1.75, 1e-12);
  EXPECT_EQ(rec.runtime_ms, 0.0);
}

TEST_F(Cli, SolveIsByteStable) {
  const auto in = "\"" + (kSamples / "path5.json").string() + "\"";
  ASSERT_EQ(run("solve " + in + " -o " + path("a.json") + " --no-timing --threads 3").code, 0);
  ASSERT_EQ(run("solve " + in + " -o " + path("b.json") + " --no-timing").code, 0);
  EXPECT_EQ(io::read_text(dir_ / "a.json"), io::read_text(dir_ / "b.json"));
}

TEST_F(Cli, BothSelectionsWriteTwoFiles) {
  const auto r = run("solve \"" + (kSamples / "path5.json").string() + "\" -o " + path("s.json") +
                     " --selection both --levels 16");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto lo = io::solution_from_json(io::parse_json(io::read_text(dir_ / "s.json"), "lo"));
  const auto hi = io::solution_from_json(io::parse_json(io::read_text(dir_ / "s.maximal.json"), "hi"));
  EXPECT_EQ(hi.selection, "maximal");
  for (const auto& [id, x] : lo.values) EXPECT_LE(x, hi.values.at(id) + 1e-12) << id;
  EXPECT_NEAR(lo.energy, hi.energy, 1e-9);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("solve").code, 1);
  EXPECT_EQ(run("solve \"" + (kSamples / "missing.json").string() + "\" -o " + path("x.json")).code, 1);
  EXPECT_EQ(run("solve \"" + (kSamples / "path5.json").string() + "\" -o " + path("x.json") + " --selection median").code,
            1);
  const auto inf = run("solve \"" + (kSamples / "infeasible.json").string() + "\" -o " + path("x.json"));
  EXPECT_EQ(inf.code, 2);
  EXPECT_NE(inf.out.find("i1"), std::string::npos);
  EXPECT_EQ(run("example disc --h 1.5 -o " + path("d.json")).code, 1);
  EXPECT_EQ(run("example torus -o " + path("d.json")).code, 1);
  EXPECT_EQ(run("suite nothing --seed 1 --count 1").code, 1);
}

TEST_F(Cli, DiscExampleWritesFieldMatrix) {
  const auto r = run("example disc --h 0.1 --levels 20 -o " + path("disc.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "disc.json"));
  EXPECT_TRUE(fs::exists(dir_ / "disc.field.txt"));
}

TEST_F(Cli, WeightedPathExampleReportsSupport) {
  const auto r = run("example weighted-path --r 0.5 --h 0.01 -o " + path("wp.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("support [0.01, 1.49]"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "wp.csv"));
}

TEST_F(Cli, SuitesPass) {
  for (const char* name : {"comparison", "stability", "lattice", "eps-monotone", "band", "oracle"}) {
    const auto r = run(std::string("suite ") + name + " --seed 3 --count 3");
    EXPECT_EQ(r.code, 0) << name << "\n" << r.out;
  }
}
