#pragma once

// Weighted-graph discretization of a metric measure space with a domain
// carved out, plus the perimeter and total-variation energies on it.

#include <array>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lgsolve/errors.hpp"
#include "lgsolve/vertex_set.hpp"

namespace lgsolve {

enum class Role { Interior, Boundary, Exterior };

inline const char* to_string(Role r) {
  switch (r) {
    case Role::Interior: return "interior";
    case Role::Boundary: return "boundary";
    case Role::Exterior: return "exterior";
  }
  return "?";
}

using Point = std::array<double, 2>;

struct Vertex {
  std::string id;
  Role role = Role::Interior;
  double measure = 0.0;
  std::optional<Point> pos;
};

/// Undirected weighted edge between vertex indices a and b.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  double w = 0.0;
};

/// Lattice metadata carried by grid-built graphs, used for dense field export.
struct GridLayout {
  double spacing = 0.0;
  std::vector<std::array<int, 2>> lattice;  // per-vertex (i, j), position = spacing * (i, j)
};

/// The discrete (X, d, mu) with the domain partitioned into interior,
/// boundary and exterior vertices. Immutable after construction.
///
/// Construction validates:
///  - unique ids, no self-loops, no duplicate edges, weights > 0, measures >= 0
///  - every boundary vertex is adjacent to an interior vertex
///  - the interior is nonempty and induces a connected subgraph
///  - at least one boundary or exterior vertex exists
///  - no edge joins an interior vertex directly to an exterior vertex
class WeightedDomainGraph {
 public:
  WeightedDomainGraph(std::vector<Vertex> vertices, std::vector<Edge> edges,
                      std::optional<GridLayout> layout = std::nullopt)
      : vertices_(std::move(vertices)), edges_(std::move(edges)), layout_(std::move(layout)) {
    validate_and_index();
  }

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(std::size_t v) const { return vertices_[v]; }
  Role role(std::size_t v) const { return vertices_[v].role; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Indices into edges() of the edges incident to v.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }
  std::size_t other_end(std::size_t edge, std::size_t v) const {
    return edges_[edge].a == v ? edges_[edge].b : edges_[edge].a;
  }
  const std::optional<GridLayout>& layout() const { return layout_; }

  std::optional<std::size_t> find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const std::string& id) const {
    auto v = find(id);
    if (!v) throw InvalidParameter("unknown vertex id '" + id + "'");
    return *v;
  }

  double total_weight() const {
    double s = 0.0;
    for (const auto& e : edges_) s += e.w;
    return s;
  }

  VertexSet with_role(Role r) const {
    VertexSet s(size());
    for (std::size_t v = 0; v < size(); ++v)
      if (vertices_[v].role == r) s.insert(v);
    return s;
  }

  /// Hop distances from the given source set; unreachable vertices get -1.
  std::vector<int> hop_distances(const VertexSet& sources) const {
    std::vector<int> dist(size(), -1);
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < size(); ++v)
      if (sources.contains(v)) {
        dist[v] = 0;
        queue.push_back(v);
      }
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (auto e : incident_[v]) {
        auto u = other_end(e, v);
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
      }
    }
    return dist;
  }

 private:
  void validate_and_index() {
    const std::size_t n = vertices_.size();
    for (std::size_t v = 0; v < n; ++v) {
      const auto& vx = vertices_[v];
      if (!index_.emplace(vx.id, v).second) throw InvalidParameter("duplicate vertex id '" + vx.id + "'");
      if (!(vx.measure >= 0.0) || !std::isfinite(vx.measure))
        throw InvalidParameter("vertex '" + vx.id + "' has invalid measure");
    }
    incident_.assign(n, {});
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& ed = edges_[e];
      if (ed.a >= n || ed.b >= n) throw InvalidParameter("edge endpoint out of range");
      if (ed.a == ed.b) throw InvalidParameter("self-loop at vertex '" + vertices_[ed.a].id + "'");
      if (!(ed.w > 0.0) || !std::isfinite(ed.w))
        throw InvalidParameter("edge " + vertices_[ed.a].id + "-" + vertices_[ed.b].id +
                               " has nonpositive weight");
      if (!seen.emplace(std::min(ed.a, ed.b), std::max(ed.a, ed.b)).second)
        throw InvalidParameter("duplicate edge " + vertices_[ed.a].id + "-" + vertices_[ed.b].id);
      const Role ra = vertices_[ed.a].role, rb = vertices_[ed.b].role;
      if ((ra == Role::Interior && rb == Role::Exterior) || (ra == Role::Exterior && rb == Role::Interior))
        throw InvalidParameter("edge " + vertices_[ed.a].id + "-" + vertices_[ed.b].id +
                               " joins interior and exterior directly");
      incident_[ed.a].push_back(e);
      incident_[ed.b].push_back(e);
    }

    const VertexSet interior = with_role(Role::Interior);
    if (interior.empty()) throw InvalidParameter("graph has no interior vertices");
    if (interior.count() == n) throw InvalidParameter("graph needs at least one boundary or exterior vertex");

    for (std::size_t v = 0; v < n; ++v) {
      if (vertices_[v].role != Role::Boundary) continue;
      bool touches = false;
      for (auto e : incident_[v]) touches = touches || interior.contains(other_end(e, v));
      if (!touches) throw InvalidParameter("boundary vertex '" + vertices_[v].id + "' has no interior neighbour");
    }

    // Connectivity of the interior-induced subgraph.
    std::vector<std::uint8_t> reached(n, 0);
    std::deque<std::size_t> queue;
    const auto start = interior.indices().front();
    reached[start] = 1;
    queue.push_back(start);
    std::size_t count = 1;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (auto e : incident_[v]) {
        auto u = other_end(e, v);
        if (!reached[u] && interior.contains(u)) {
          reached[u] = 1;
          ++count;
          queue.push_back(u);
        }
      }
    }
    if (count != interior.count()) throw InvalidParameter("interior vertices do not induce a connected subgraph");

    if (layout_ && layout_->lattice.size() != n) throw InvalidParameter("grid layout does not cover every vertex");
  }

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::optional<GridLayout> layout_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> incident_;
};

// ---------------------------------------------------------------------------
// Regions

enum class RegionKind { OmegaOnly, OmegaClosure, OmegaEps };

/// A vertex set standing for one of the domains on which energies are measured.
/// Edges count toward an energy "in" a region when at least one endpoint lies in it.
struct Region {
  RegionKind kind = RegionKind::OmegaOnly;
  int hops = 0;  // only meaningful for OmegaEps
  VertexSet members;

  bool contains(std::size_t v) const { return members.contains(v); }
  bool counts(const Edge& e) const { return members.contains(e.a) || members.contains(e.b); }
};

/// OmegaOnly: interior. OmegaClosure: interior and boundary.
/// OmegaEps(k): closure plus exterior vertices within k hops of the interior.
inline Region region(const WeightedDomainGraph& g, RegionKind kind, int hops = 0) {
  Region r{kind, hops, VertexSet(g.size())};
  switch (kind) {
    case RegionKind::OmegaOnly:
      r.members = g.with_role(Role::Interior);
      break;
    case RegionKind::OmegaClosure:
      r.members = g.with_role(Role::Interior) | g.with_role(Role::Boundary);
      break;
    case RegionKind::OmegaEps: {
      if (hops < 1) throw InvalidParameter("OmegaEps requires a hop radius >= 1");
      r.members = g.with_role(Role::Interior) | g.with_role(Role::Boundary);
      const auto dist = g.hop_distances(g.with_role(Role::Interior));
      for (std::size_t v = 0; v < g.size(); ++v)
        if (dist[v] >= 0 && dist[v] <= hops) r.members.insert(v);
      break;
    }
  }
  return r;
}

inline Region omega_eps(const WeightedDomainGraph& g, int hops) { return region(g, RegionKind::OmegaEps, hops); }

/// Vertices touched by at least one edge counted in the region, plus the region itself.
inline VertexSet region_support(const WeightedDomainGraph& g, const Region& r) {
  VertexSet s = r.members;
  for (const auto& e : g.edges())
    if (r.counts(e)) {
      s.insert(e.a);
      s.insert(e.b);
    }
  return s;
}

// ---------------------------------------------------------------------------
// Energies

/// Weight of the edges with exactly one endpoint in S and at least one in R.
inline double perimeter(const WeightedDomainGraph& g, const VertexSet& s, const Region& r) {
  double p = 0.0;
  for (const auto& e : g.edges())
    if (s.contains(e.a) != s.contains(e.b) && r.counts(e)) p += e.w;
  return p;
}

/// Sum of w(a,b) |u(a) - u(b)| over edges counted in R. NaN marks an
/// undefined value; hitting one on a counted edge is an error.
inline double total_variation(const WeightedDomainGraph& g, std::span<const double> u, const Region& r) {
  if (u.size() != g.size()) throw MissingValue("vertex function has wrong length");
  double tv = 0.0;
  for (const auto& e : g.edges()) {
    if (!r.counts(e)) continue;
    const double ua = u[e.a], ub = u[e.b];
    if (std::isnan(ua)) throw MissingValue("no value at vertex '" + g.vertex(e.a).id + "'");
    if (std::isnan(ub)) throw MissingValue("no value at vertex '" + g.vertex(e.b).id + "'");
    tv += e.w * std::abs(ua - ub);
  }
  return tv;
}

inline std::vector<double> indicator(const VertexSet& s) {
  std::vector<double> u(s.universe(), 0.0);
  for (std::size_t v = 0; v < u.size(); ++v)
    if (s.contains(v)) u[v] = 1.0;
  return u;
}

// ---------------------------------------------------------------------------
// Builders

inline std::string lattice_id(int i, int j) { return std::to_string(i) + ":" + std::to_string(j); }

/// 4-neighbour lattice of spacing h. Points of norm < radius are interior,
/// their non-interior lattice neighbours are boundary, and one further ring
/// of neighbours is exterior. Edge weight h, vertex measure h^2.
inline WeightedDomainGraph build_grid_disc(double radius, double h) {
  if (!(radius > 0.0) || !(h > 0.0)) throw InvalidParameter("radius and spacing must be positive");
  if (!(h < radius)) throw InvalidParameter("spacing must be smaller than the radius");

  const int reach = static_cast<int>(std::ceil(radius / h)) + 3;
  const int side = 2 * reach + 1;
  auto slot = [&](int i, int j) { return static_cast<std::size_t>((i + reach) * side + (j + reach)); };
  std::vector<int> kind(static_cast<std::size_t>(side * side), -1);  // -1 none, else Role

  const double r2 = radius * radius;
  for (int i = -reach; i <= reach; ++i)
    for (int j = -reach; j <= reach; ++j) {
      const double x = i * h, y = j * h;
      if (x * x + y * y < r2) kind[slot(i, j)] = static_cast<int>(Role::Interior);
    }
  constexpr std::array<std::array<int, 2>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  auto inside = [&](int i, int j) { return i >= -reach && i <= reach && j >= -reach && j <= reach; };
  auto mark_ring = [&](Role from, Role to) {
    std::vector<std::size_t> ring;
    for (int i = -reach; i <= reach; ++i)
      for (int j = -reach; j <= reach; ++j) {
        if (kind[slot(i, j)] != -1) continue;
        for (const auto& d : steps) {
          const int a = i + d[0], b = j + d[1];
          if (inside(a, b) && kind[slot(a, b)] == static_cast<int>(from)) {
            ring.push_back(slot(i, j));
            break;
          }
        }
      }
    for (auto s : ring) kind[s] = static_cast<int>(to);
  };
  mark_ring(Role::Interior, Role::Boundary);
  mark_ring(Role::Boundary, Role::Exterior);

  std::vector<Vertex> vertices;
  GridLayout layout{h, {}};
  std::vector<long> index(kind.size(), -1);
  for (int j = reach; j >= -reach; --j)
    for (int i = -reach; i <= reach; ++i) {
      const auto s = slot(i, j);
      if (kind[s] < 0) continue;
      index[s] = static_cast<long>(vertices.size());
      vertices.push_back(Vertex{lattice_id(i, j), static_cast<Role>(kind[s]), h * h, Point{i * h, j * h}});
      layout.lattice.push_back({i, j});
    }
  std::vector<Edge> edges;
  for (int j = reach; j >= -reach; --j)
    for (int i = -reach; i <= reach; ++i) {
      const auto s = slot(i, j);
      if (index[s] < 0) continue;
      for (const auto& d : {std::array<int, 2>{1, 0}, std::array<int, 2>{0, -1}}) {
        const int a = i + d[0], b = j + d[1];
        if (!inside(a, b) || index[slot(a, b)] < 0) continue;
        edges.push_back(Edge{static_cast<std::size_t>(index[s]), static_cast<std::size_t>(index[slot(a, b)]), h});
      }
    }
  return WeightedDomainGraph(std::move(vertices), std::move(edges), std::move(layout));
}

/// Path graph over samples of a density. Vertex k sits at origin + k*spacing
/// with measure weights[k]*spacing; the edge (k, k+1) carries the mean of the
/// two sample weights, i.e. the density at the midpoint for piecewise-linear
/// densities. Indices in [first, last] are interior, the two flanking indices
/// boundary, everything else exterior.
inline WeightedDomainGraph build_weighted_path(std::span<const double> weights, std::size_t first,
                                               std::size_t last, double spacing = 1.0, double origin = 0.0) {
  const std::size_t n = weights.size();
  if (n < 3) throw InvalidParameter("a weighted path needs at least 3 weights");
  if (first > last || first < 1 || last + 2 > n)
    throw InvalidParameter("interior range must lie strictly inside the index range");
  if (!(spacing > 0.0)) throw InvalidParameter("spacing must be positive");
  std::vector<Vertex> vertices;
  vertices.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(weights[k] > 0.0)) throw InvalidParameter("path weights must be positive");
    Role role = Role::Exterior;
    if (k >= first && k <= last) role = Role::Interior;
    else if (k + 1 == first || k == last + 1) role = Role::Boundary;
    vertices.push_back(Vertex{std::to_string(k), role, weights[k] * spacing,
                              Point{origin + static_cast<double>(k) * spacing, 0.0}});
  }
  std::vector<Edge> edges;
  for (std::size_t k = 0; k + 1 < n; ++k) edges.push_back(Edge{k, k + 1, 0.5 * (weights[k] + weights[k + 1])});
  return WeightedDomainGraph(std::move(vertices), std::move(edges));
}

}  // namespace lgsolve
