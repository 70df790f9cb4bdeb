#pragma once

// JSON problem / solution files and plain-text field exports.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lgsolve/errors.hpp"
#include "lgsolve/graph_domain.hpp"
#include "lgsolve/level_solver.hpp"
#include "lgsolve/stacker.hpp"

namespace lgsolve::io {

using nlohmann::json;

/// Rounds to 12 significant digits so written files are stable across runs.
inline double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format12(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ParseError("write to '" + path.string() + "' failed");
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Graph files

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  return j.at(key);
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

inline Role parse_role(const json& j, const std::string& where) {
  if (j == "interior") return Role::Interior;
  if (j == "boundary") return Role::Boundary;
  if (j == "exterior") return Role::Exterior;
  throw ParseError(where + ": role must be interior, boundary or exterior");
}

/// Number, or one of the strings "-inf", "+inf", "inf".
inline double extended_number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j == "-inf") return -std::numeric_limits<double>::infinity();
  if (j == "+inf" || j == "inf") return std::numeric_limits<double>::infinity();
  throw ParseError(where + ": expected a number, \"-inf\" or \"+inf\"");
}

inline json extended_to_json(double x) {
  if (x == std::numeric_limits<double>::infinity()) return "+inf";
  if (x == -std::numeric_limits<double>::infinity()) return "-inf";
  return round12(x);
}

}  // namespace detail

inline WeightedDomainGraph graph_from_json(const json& j) {
  using namespace detail;
  const auto& vs = require(j, "vertices", "graph");
  const auto& es = require(j, "edges", "graph");
  if (!vs.is_array() || !es.is_array()) throw ParseError("graph: 'vertices' and 'edges' must be arrays");

  std::vector<Vertex> vertices;
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const auto where = "vertex #" + std::to_string(k);
    const auto& v = vs[k];
    const auto& id = require(v, "id", where);
    if (!id.is_string()) throw ParseError(where + ": id must be a string");
    Vertex vx{id.get<std::string>(), parse_role(require(v, "role", where), where),
              number(require(v, "measure", where), where), std::nullopt};
    if (v.contains("pos")) {
      const auto& p = v.at("pos");
      if (!p.is_array() || p.size() != 2) throw ParseError(where + ": pos must be [x, y]");
      vx.pos = Point{number(p[0], where), number(p[1], where)};
    }
    if (!index.emplace(vx.id, vertices.size()).second) throw ParseError("duplicate vertex id '" + vx.id + "'");
    vertices.push_back(std::move(vx));
  }
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < es.size(); ++k) {
    const auto where = "edge #" + std::to_string(k);
    const auto& e = es[k];
    const auto& a = require(e, "a", where);
    const auto& b = require(e, "b", where);
    if (!a.is_string() || !b.is_string()) throw ParseError(where + ": endpoints must be vertex ids");
    auto ia = index.find(a.get<std::string>());
    auto ib = index.find(b.get<std::string>());
    if (ia == index.end() || ib == index.end()) throw ParseError(where + ": unknown endpoint");
    edges.push_back(Edge{ia->second, ib->second, number(require(e, "w", where), where)});
  }
  try {
    return WeightedDomainGraph(std::move(vertices), std::move(edges));
  } catch (const InvalidParameter& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

inline json graph_to_json(const WeightedDomainGraph& g) {
  json vs = json::array();
  for (const auto& v : g.vertices()) {
    json jv{{"id", v.id}, {"role", to_string(v.role)}, {"measure", round12(v.measure)}};
    if (v.pos) jv["pos"] = {round12((*v.pos)[0]), round12((*v.pos)[1])};
    vs.push_back(std::move(jv));
  }
  json es = json::array();
  for (const auto& e : g.edges())
    es.push_back({{"a", g.vertex(e.a).id}, {"b", g.vertex(e.b).id}, {"w", round12(e.w)}});
  return json{{"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

inline WeightedDomainGraph load_graph(const std::filesystem::path& path) {
  return graph_from_json(parse_json(read_text(path), path.string()));
}

// ---------------------------------------------------------------------------
// Problem files

struct SolverSettings {
  int levels = 40;
  std::string selection = "minimal";  // minimal | maximal | both
  std::optional<int> eps_hops;
};

struct ProblemFile {
  std::shared_ptr<const WeightedDomainGraph> graph;
  std::optional<std::string> graph_path;  // set when the graph was referenced by path
  ProblemData data;
  SolverSettings solver;
};

/// `base` resolves a relative graph path.
inline ProblemFile problem_from_json(const json& j, const std::filesystem::path& base = {}) {
  using namespace detail;
  ProblemFile pf;
  const auto& gj = require(j, "graph", "problem");
  if (gj.is_string()) {
    pf.graph_path = gj.get<std::string>();
    std::filesystem::path p(*pf.graph_path);
    if (p.is_relative() && !base.empty()) p = base / p;
    pf.graph = std::make_shared<const WeightedDomainGraph>(load_graph(p));
  } else {
    pf.graph = std::make_shared<const WeightedDomainGraph>(graph_from_json(gj));
  }
  const auto& g = *pf.graph;
  pf.data = ProblemData::unconstrained(g);

  const auto& dj = require(j, "data", "problem");
  auto read_map = [&](const char* key, Role role, std::vector<double>& target, bool extended, bool required) {
    if (!dj.contains(key)) {
      if (required) throw ParseError(std::string("data: missing '") + key + "' map");
      return;
    }
    const auto& m = dj.at(key);
    if (!m.is_object()) throw ParseError(std::string("data.") + key + " must be an object");
    for (const auto& [id, val] : m.items()) {
      const auto v = g.find(id);
      const auto where = std::string("data.") + key + "['" + id + "']";
      if (!v) throw ParseError(where + ": unknown vertex");
      if (g.role(*v) != role) throw ParseError(where + ": vertex is not " + to_string(role));
      target[*v] = extended ? extended_number(val, where) : number(val, where);
    }
    if (!required) return;  // absent obstacle entries stay at -inf / +inf
    for (std::size_t v = 0; v < g.size(); ++v)
      if (g.role(v) == role && !m.contains(g.vertex(v).id))
        throw ParseError(std::string("data.") + key + ": missing value for " + to_string(role) + " vertex '" +
                         g.vertex(v).id + "'");
  };
  read_map("psi1", Role::Interior, pf.data.psi1, true, false);
  read_map("psi2", Role::Interior, pf.data.psi2, true, false);
  read_map("f", Role::Boundary, pf.data.f, false, true);
  read_map("g", Role::Boundary, pf.data.g, false, true);

  if (j.contains("solver")) {
    const auto& sj = j.at("solver");
    if (sj.contains("levels")) {
      if (!sj.at("levels").is_number_integer() || sj.at("levels").get<int>() < 1)
        throw ParseError("solver.levels must be a positive integer");
      pf.solver.levels = sj.at("levels").get<int>();
    }
    if (sj.contains("selection")) {
      const auto& s = sj.at("selection");
      if (s != "minimal" && s != "maximal" && s != "both")
        throw ParseError("solver.selection must be minimal, maximal or both");
      pf.solver.selection = s.get<std::string>();
    }
    if (sj.contains("eps_hops") && !sj.at("eps_hops").is_null()) {
      if (!sj.at("eps_hops").is_number_integer() || sj.at("eps_hops").get<int>() < 1)
        throw ParseError("solver.eps_hops must be a positive integer");
      pf.solver.eps_hops = sj.at("eps_hops").get<int>();
    }
  }
  return pf;
}

inline json problem_to_json(const ProblemFile& pf) {
  using namespace detail;
  const auto& g = *pf.graph;
  json data{{"psi1", json::object()}, {"psi2", json::object()}, {"f", json::object()}, {"g", json::object()}};
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto& id = g.vertex(v).id;
    if (g.role(v) == Role::Interior) {
      data["psi1"][id] = extended_to_json(pf.data.psi1[v]);
      data["psi2"][id] = extended_to_json(pf.data.psi2[v]);
    } else if (g.role(v) == Role::Boundary) {
      data["f"][id] = round12(pf.data.f[v]);
      data["g"][id] = round12(pf.data.g[v]);
    }
  }
  json solver{{"levels", pf.solver.levels}, {"selection", pf.solver.selection}};
  if (pf.solver.eps_hops) solver["eps_hops"] = *pf.solver.eps_hops;
  json out{{"data", std::move(data)}, {"solver", std::move(solver)}};
  out["graph"] = pf.graph_path ? json(*pf.graph_path) : graph_to_json(g);
  return out;
}

inline ProblemFile load_problem(const std::filesystem::path& path) {
  return problem_from_json(parse_json(read_text(path), path.string()), path.parent_path());
}

// ---------------------------------------------------------------------------
// Solution files

struct LevelRecord {
  double t = 0.0;
  double perimeter = 0.0;
  std::size_t set_size = 0;
  std::optional<double> eps_lambda;

  friend bool operator==(const LevelRecord&, const LevelRecord&) = default;
};

struct SolutionRecord {
  std::map<std::string, double> values;
  double energy = 0.0;
  double delta = 0.0;
  std::vector<LevelRecord> levels;
  std::string selection = "minimal";
  double runtime_ms = 0.0;

  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

inline SolutionRecord make_record(const WeightedDomainGraph& g, const StackedSolution& sol, double runtime_ms) {
  SolutionRecord r;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (!std::isnan(sol.values[v])) r.values[g.vertex(v).id] = sol.values[v];
  r.energy = sol.energy;
  r.delta = sol.grid.delta();
  const auto ts = sol.grid.thresholds();
  for (std::size_t i = 0; i < sol.level_sets.size(); ++i)
    r.levels.push_back(LevelRecord{ts[i], sol.level_sets[i].perimeter_value, sol.level_sets[i].members.count(), {}});
  r.selection = to_string(sol.selection);
  r.runtime_ms = runtime_ms;
  return r;
}

inline json solution_to_json(const SolutionRecord& r) {
  json values = json::object();
  for (const auto& [id, x] : r.values) values[id] = round12(x);
  json levels = json::array();
  for (const auto& l : r.levels) {
    json jl{{"t", round12(l.t)}, {"perimeter", round12(l.perimeter)}, {"set_size", l.set_size}};
    if (l.eps_lambda) jl["eps_lambda"] = round12(*l.eps_lambda);
    levels.push_back(std::move(jl));
  }
  return json{{"values", std::move(values)}, {"energy", round12(r.energy)}, {"delta", round12(r.delta)},
              {"levels", std::move(levels)}, {"selection", r.selection}, {"runtime_ms", round12(r.runtime_ms)}};
}

inline SolutionRecord solution_from_json(const json& j) {
  using namespace detail;
  SolutionRecord r;
  const auto& vals = require(j, "values", "solution");
  if (!vals.is_object()) throw ParseError("solution.values must be an object");
  for (const auto& [id, x] : vals.items()) r.values[id] = number(x, "solution.values");
  r.energy = number(require(j, "energy", "solution"), "solution.energy");
  r.delta = number(require(j, "delta", "solution"), "solution.delta");
  for (const auto& l : require(j, "levels", "solution")) {
    LevelRecord lr{number(require(l, "t", "level"), "level.t"), number(require(l, "perimeter", "level"), "level.perimeter"),
                   require(l, "set_size", "level").get<std::size_t>(), std::nullopt};
    if (l.contains("eps_lambda")) lr.eps_lambda = number(l.at("eps_lambda"), "level.eps_lambda");
    r.levels.push_back(lr);
  }
  const auto& sel = require(j, "selection", "solution");
  if (!sel.is_string()) throw ParseError("solution.selection must be a string");
  r.selection = sel.get<std::string>();
  r.runtime_ms = number(require(j, "runtime_ms", "solution"), "solution.runtime_ms");
  return r;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Field exports

/// Dense matrix over the lattice bounding box: one row per lattice y
/// (decreasing), space-separated values, "nan" off the closure.
inline void write_field_matrix(const WeightedDomainGraph& g, const std::vector<double>& values, std::ostream& out) {
  if (!g.layout()) throw InvalidParameter("field matrix export needs a grid-built graph");
  const auto& lat = g.layout()->lattice;
  int imin = lat.front()[0], imax = imin, jmin = lat.front()[1], jmax = jmin;
  for (const auto& p : lat) {
    imin = std::min(imin, p[0]);
    imax = std::max(imax, p[0]);
    jmin = std::min(jmin, p[1]);
    jmax = std::max(jmax, p[1]);
  }
  const auto width = static_cast<std::size_t>(imax - imin + 1);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(jmax - jmin + 1),
                                        std::vector<double>(width, std::numeric_limits<double>::quiet_NaN()));
  for (std::size_t v = 0; v < g.size(); ++v)
    rows[static_cast<std::size_t>(jmax - lat[v][1])][static_cast<std::size_t>(lat[v][0] - imin)] = values[v];
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " " : "") << format12(row[k]);
    out << '\n';
  }
}

/// One line per vertex with a value: id,x,y,value.
inline void write_vertex_csv(const WeightedDomainGraph& g, const std::vector<double>& values, std::ostream& out) {
  out << "id,x,y,value\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (std::isnan(values[v])) continue;
    const auto& p = g.vertex(v).pos;
    out << g.vertex(v).id << ',' << (p ? format12((*p)[0]) : "") << ',' << (p ? format12((*p)[1]) : "") << ','
        << format12(values[v]) << '\n';
  }
}

}  // namespace lgsolve::io
