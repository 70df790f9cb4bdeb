// lgsolve: command-line driver for the double-obstacle least-gradient solver.
//
//   lgsolve solve <in> -o <out> [--levels N] [--selection minimal|maximal|both] [--threads K]
//   lgsolve example disc --h H --levels N -o <out>
//   lgsolve example weighted-path --r R --h H -o <out>
//   lgsolve suite <name> --seed S --count C
//
// Exit codes: 0 ok, 1 usage/parse/I-O, 2 infeasible problem, 3 internal error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lgsolve/io.hpp"
#include "lgsolve/lgsolve.hpp"
#include "lgsolve/suites.hpp"

namespace fs = std::filesystem;
using namespace lgsolve;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInfeasible = 2;
constexpr int kInternal = 3;

fs::path sibling(const fs::path& out, const std::string& suffix) {
  auto p = out;
  p.replace_filename(out.stem().string() + suffix);
  return p;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

struct SolveArgs {
  std::string input;
  std::string output;
  std::optional<int> levels;
  std::optional<std::string> selection;
  int threads = 1;
  bool no_timing = false;
};

int cmd_solve(const SolveArgs& args) {
  const auto pf = io::load_problem(args.input);
  const auto& g = *pf.graph;
  const auto report = check_feasibility(g, pf.data);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  if (!report.ok) {
    for (const auto& v : report.violations) std::cerr << "infeasible: " << v << "\n";
    return kInfeasible;
  }
  const int levels = args.levels.value_or(pf.solver.levels);
  const std::string selection = args.selection.value_or(pf.solver.selection);
  const SolveOptions opts{args.threads};
  const auto grid = make_level_grid(g, pf.data, levels);

  auto run = [&](Selection which, const fs::path& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto sol = which == Selection::Minimal ? solve_minimal(g, pf.data, grid, opts)
                                                 : solve_maximal(g, pf.data, grid, opts);
    auto record = io::make_record(g, sol, 0.0);
    if (pf.solver.eps_hops) {
      const auto ts = grid.thresholds();
      for (std::size_t i = 0; i < ts.size(); ++i) {
        // The optimal eps-energy is shared by the minimal and maximal sets.
        record.levels[i].eps_lambda = solve_eps_weak(g, pf.data, ts[i], *pf.solver.eps_hops).lambda;
      }
    }
    if (sol.repairs > 0) std::cerr << "warning: " << sol.repairs << " nesting repairs applied\n";
    record.runtime_ms = args.no_timing ? 0.0 : elapsed_ms(start);
    io::write_text(out, io::dump(io::solution_to_json(record)));
    std::cout << to_string(which) << ": energy " << io::format12(sol.energy) << ", delta "
              << io::format12(grid.delta()) << ", levels " << grid.levels << " -> " << out.string() << "\n";
  };

  if (selection == "minimal" || selection == "both") run(Selection::Minimal, args.output);
  if (selection == "maximal") run(Selection::Maximal, args.output);
  if (selection == "both") run(Selection::Maximal, sibling(args.output, ".maximal.json"));
  if (selection != "minimal" && selection != "maximal" && selection != "both") {
    std::cerr << "error: unknown selection '" << selection << "'\n";
    return kUsage;
  }
  return kOk;
}

struct ExampleArgs {
  std::string name;
  double h = 0.05;
  double r = 0.5;
  int levels = 40;
  int threads = 1;
  std::string output;
  bool no_timing = false;
};

int example_disc(const ExampleArgs& args) {
  const auto inst = worked::disc_instance(args.h);
  const auto& g = inst.graph;
  const auto start = std::chrono::steady_clock::now();
  const auto sol = solve_minimal(g, inst.data, args.levels, SolveOptions{args.threads});
  const double ms = elapsed_ms(start);

  double worst = 0.0;
  for (auto v : g.with_role(Role::Interior).indices())
    worst = std::max(worst, std::abs(sol.values[v] - worked::disc_closed_form((*g.vertex(v).pos)[1])));

  const fs::path out(args.output);
  io::write_text(out, io::dump(io::solution_to_json(io::make_record(g, sol, args.no_timing ? 0.0 : ms))));
  std::ostringstream field;
  io::write_field_matrix(g, sol.values, field);
  const auto field_path = sibling(out, ".field.txt");
  io::write_text(field_path, field.str());

  std::cout << "disc: h " << args.h << ", " << g.with_role(Role::Interior).count() << " interior vertices, "
            << sol.grid.levels << " levels, delta " << io::format12(sol.grid.delta()) << "\n"
            << "energy " << io::format12(sol.energy) << ", max interior deviation from closed form "
            << io::format12(worst) << "\n"
            << "wrote " << out.string() << " and " << field_path.string() << "\n";
  return kOk;
}

int example_weighted_path(const ExampleArgs& args) {
  const auto inst = worked::weighted_path_instance(args.r, args.h);
  const auto& g = *inst.graph;
  const auto start = std::chrono::steady_clock::now();
  const auto cut = solve_cut(inst.problem);
  const double ms = elapsed_ms(start);
  const auto [left, right] = worked::support_extent(g, cut.minimal.members);

  // Cut edges of the minimal set, reported by midpoint.
  std::vector<double> cuts;
  for (const auto& e : g.edges())
    if (cut.minimal.members.contains(e.a) != cut.minimal.members.contains(e.b))
      cuts.push_back(0.5 * ((*g.vertex(e.a).pos)[0] + (*g.vertex(e.b).pos)[0]));

  const auto values = indicator(cut.minimal.members);
  io::SolutionRecord record;
  for (std::size_t v = 0; v < g.size(); ++v) record.values[g.vertex(v).id] = values[v];
  record.energy = cut.minimal.perimeter_value;
  record.delta = 1.0;
  record.levels.push_back(io::LevelRecord{0.5, cut.minimal.perimeter_value, cut.minimal.members.count(), {}});
  record.selection = "minimal";
  record.runtime_ms = args.no_timing ? 0.0 : ms;

  const fs::path out(args.output);
  io::write_text(out, io::dump(io::solution_to_json(record)));
  std::ostringstream csv;
  io::write_vertex_csv(g, values, csv);
  const auto csv_path = sibling(out, ".csv");
  io::write_text(csv_path, csv.str());

  std::cout << "weighted-path: r " << args.r << ", h " << args.h << "\n"
            << "minimal solution support [" << io::format12(left) << ", " << io::format12(right) << "]\n"
            << "cut edges at";
  for (double c : cuts) std::cout << " x=" << io::format12(c);
  std::cout << "\nperimeter " << io::format12(cut.minimal.perimeter_value) << "\n"
            << "wrote " << out.string() << " and " << csv_path.string() << "\n";
  return kOk;
}

int cmd_example(const ExampleArgs& args) {
  if (args.name == "disc") return example_disc(args);
  if (args.name == "weighted-path") return example_weighted_path(args);
  std::cerr << "error: unknown example '" << args.name << "' (expected disc or weighted-path)\n";
  return kUsage;
}

int cmd_suite(const std::string& name, std::uint64_t seed, int count) {
  const auto& names = suites::suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::cerr << "error: unknown suite '" << name << "'\n";
    return kUsage;
  }
  const auto report = suites::run_suite(name, seed, count);
  std::cout << suites::format_report(report);
  std::cout << (report.ok() ? "suite passed" : "suite FAILED") << "\n";
  return report.ok() ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-obstacle least-gradient solver"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve a problem file");
  solve->add_option("input", solve_args.input, "Problem file (JSON)")->required();
  solve->add_option("-o,--output", solve_args.output, "Solution file (JSON)")->required();
  solve->add_option("--levels", solve_args.levels, "Number of thresholds");
  solve->add_option("--selection", solve_args.selection, "minimal, maximal or both");
  solve->add_option("--threads", solve_args.threads, "Worker threads for per-level solves")->check(CLI::PositiveNumber);
  solve->add_flag("--no-timing", solve_args.no_timing, "Write runtime_ms as 0 for byte-stable output");

  ExampleArgs ex_args;
  auto* example = app.add_subcommand("example", "Build and solve a worked instance");
  example->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  example->add_option("name", ex_args.name, "disc or weighted-path")->required();
  example->add_option("--h", ex_args.h, "Grid spacing");
  example->add_option("--r", ex_args.r, "Ball radius for weighted-path");
  example->add_option("--levels", ex_args.levels, "Number of thresholds (disc)");
  example->add_option("--threads", ex_args.threads, "Worker threads")->check(CLI::PositiveNumber);
  example->add_option("-o,--output", ex_args.output, "Solution file (JSON)")->required();
  example->add_flag("--no-timing", ex_args.no_timing, "Write runtime_ms as 0");

  std::string suite_name;
  std::uint64_t seed = 7;
  int count = 100;
  auto* suite = app.add_subcommand("suite", "Run a seeded property suite");
  suite->add_option("name", suite_name, "comparison, stability, lattice, eps-monotone, band or oracle")->required();
  suite->add_option("--seed", seed, "64-bit seed");
  suite->add_option("--count", count, "Number of random instances")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*example) return cmd_example(ex_args);
    if (*suite) return cmd_suite(suite_name, seed, count);
  } catch (const InfeasibleConstraints& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
