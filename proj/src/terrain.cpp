#include "prickle/terrain.hpp"

#include "prickle/linear_feasibility.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace prickle {

const char* to_string(VertexClass c) {
  switch (c) {
    case VertexClass::ConvexInternal: return "convex-internal";
    case VertexClass::ConcaveInternal: return "concave-internal";
    case VertexClass::SaddleOrOther: return "saddle-or-other";
    case VertexClass::Boundary: return "boundary";
  }
  return "?";
}

Terrain1D validate_terrain1d(std::vector<Vec2> vertices) {
  if (vertices.size() < 2)
    throw ValidationError("polyline needs at least 2 vertices");
  for (size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i - 1].x >= vertices[i].x)
      throw ValidationError("x not strictly increasing at vertex " +
                            std::to_string(i));
  return Terrain1D{std::move(vertices)};
}

VertexClass classify_vertex(const Terrain1D& t, int v) {
  if (v <= 0 || v + 1 >= static_cast<int>(t.vertices.size()))
    return VertexClass::Boundary;
  int s = orient2d(t.vertices[v - 1], t.vertices[v], t.vertices[v + 1]);
  if (s < 0) return VertexClass::ConvexInternal;
  if (s > 0) return VertexClass::ConcaveInternal;
  return VertexClass::SaddleOrOther;
}

bool is_local_max(const Terrain1D& t, int v, const Vec2& d) {
  int n = static_cast<int>(t.vertices.size());
  if (v > 0 && sgn(dot(t.vertices[v - 1] - t.vertices[v], d)) > 0) return false;
  if (v + 1 < n && sgn(dot(t.vertices[v + 1] - t.vertices[v], d)) > 0)
    return false;
  return true;
}

long pi_v(const Terrain1D& t, const Vec2& d) {
  long count = 0;
  for (int v = 1; v + 1 < static_cast<int>(t.vertices.size()); ++v)
    if (classify_vertex(t, v) == VertexClass::ConvexInternal &&
        is_local_max(t, v, d))
      ++count;
  return count;
}

namespace {

constexpr std::int64_t kIntViewBound = 1 << 21;

// Disjoint projected interiors via separating-edge test (exact SAT for convex
// polygons): interiors are disjoint iff some directed edge of one triangle has
// every vertex of the other on its right or on the line.
bool projected_interiors_disjoint(const std::array<Vec2, 3>& p,
                                  const std::array<Vec2, 3>& q) {
  auto separates = [](const std::array<Vec2, 3>& a,
                      const std::array<Vec2, 3>& b) {
    for (int i = 0; i < 3; ++i) {
      const Vec2& u = a[i];
      const Vec2& v = a[(i + 1) % 3];
      bool all_out = true;
      for (int j = 0; j < 3; ++j)
        if (orient2d(u, v, b[j]) > 0) {
          all_out = false;
          break;
        }
      if (all_out) return true;
    }
    return false;
  };
  return separates(p, q) || separates(q, p);
}

bool point_in_closed_tri(const Vec2& pt, const Vec2& a, const Vec2& b,
                         const Vec2& c) {
  return orient2d(a, b, pt) >= 0 && orient2d(b, c, pt) >= 0 &&
         orient2d(c, a, pt) >= 0;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

VertexClass classify_internal(const Terrain2D& t, int v) {
  // Convex: exists n = (a, b, 1) with dot(u - v, n) < 0 for every neighbor u.
  // Concave: same with > 0, i.e. negate every row.
  std::vector<StrictRow> rows;
  rows.reserve(t.neighbors[v].size());
  const Vec3& p = t.vertices[v];
  for (int u : t.neighbors[v]) {
    Vec3 d = t.vertices[u] - p;
    rows.push_back({d.x, d.y, d.z});
  }
  if (solve_strict_2var(rows)) return VertexClass::ConvexInternal;
  for (auto& r : rows) {
    r[0] = -r[0];
    r[1] = -r[1];
    r[2] = -r[2];
  }
  if (solve_strict_2var(rows)) return VertexClass::ConcaveInternal;
  return VertexClass::SaddleOrOther;
}

} // namespace

Terrain2D validate_terrain2d(std::vector<Vec3> vertices,
                             std::vector<std::array<int, 3>> triangles) {
  Terrain2D t;
  t.vertices = std::move(vertices);
  t.triangles = std::move(triangles);
  const int nv = static_cast<int>(t.vertices.size());
  const int nt = static_cast<int>(t.triangles.size());
  if (nv < 3) throw ValidationError("terrain needs at least 3 vertices");
  if (nt < 1) throw ValidationError("terrain needs at least 1 triangle");

  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < 3; ++j) {
      int v = t.triangles[i][j];
      if (v < 0 || v >= nv)
        throw ValidationError("triangle " + std::to_string(i) +
                              " references invalid vertex " + std::to_string(v));
      if (v == t.triangles[i][(j + 1) % 3])
        throw ValidationError("triangle " + std::to_string(i) +
                              " repeats a vertex");
    }

  // Duplicate projected vertices.
  {
    std::vector<int> order(nv);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (t.vertices[a].x != t.vertices[b].x)
        return t.vertices[a].x < t.vertices[b].x;
      return t.vertices[a].y < t.vertices[b].y;
    });
    for (int i = 1; i < nv; ++i) {
      int a = order[i - 1], b = order[i];
      if (t.vertices[a].x == t.vertices[b].x &&
          t.vertices[a].y == t.vertices[b].y)
        throw ValidationError("duplicate projected vertices " +
                              std::to_string(a) + " and " + std::to_string(b));
    }
  }

  // Orientation, area, per-triangle data.
  t.tri_data.reserve(nt);
  for (int i = 0; i < nt; ++i) {
    const auto& tr = t.triangles[i];
    Vec2 a = project_xy(t.vertices[tr[0]]);
    Vec2 b = project_xy(t.vertices[tr[1]]);
    Vec2 c = project_xy(t.vertices[tr[2]]);
    int s = orient2d(a, b, c);
    if (s == 0)
      throw ValidationError("zero-area projected triangle " + std::to_string(i));
    if (s < 0)
      throw ValidationError("inconsistent orientation: triangle " +
                            std::to_string(i) + " is clockwise in projection");
    TriangleData td;
    td.normal = cross(t.vertices[tr[1]] - t.vertices[tr[0]],
                      t.vertices[tr[2]] - t.vertices[tr[0]]);
    td.lox = std::min({a.x, b.x, c.x});
    td.hix = std::max({a.x, b.x, c.x});
    td.loy = std::min({a.y, b.y, c.y});
    td.hiy = std::max({a.y, b.y, c.y});
    td.loz = std::min({t.vertices[tr[0]].z, t.vertices[tr[1]].z,
                       t.vertices[tr[2]].z});
    td.hiz = std::max({t.vertices[tr[0]].z, t.vertices[tr[1]].z,
                       t.vertices[tr[2]].z});
    t.tri_data.push_back(std::move(td));
  }

  // Edge map: at most two incident triangles, opposite directions.
  std::map<std::pair<int, int>, std::array<int, 2>> edge_map;
  std::map<std::pair<int, int>, int> directed_seen;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < 3; ++j) {
      int u = t.triangles[i][j], v = t.triangles[i][(j + 1) % 3];
      auto dir_key = std::make_pair(u, v);
      if (directed_seen.count(dir_key))
        throw ValidationError(
            "inconsistent orientation: edge (" + std::to_string(u) + "," +
            std::to_string(v) + ") used twice in the same direction by triangles " +
            std::to_string(directed_seen[dir_key]) + " and " + std::to_string(i));
      directed_seen[dir_key] = i;
      auto key = std::minmax(u, v);
      auto it = edge_map.find(key);
      if (it == edge_map.end())
        edge_map[key] = {i, -1};
      else if (it->second[1] == -1)
        it->second[1] = i;
      else
        throw ValidationError("edge (" + std::to_string(key.first) + "," +
                              std::to_string(key.second) +
                              ") shared by more than two triangles");
    }

  // Pairwise-disjoint projected interiors (bbox sweep prefilter).
  {
    std::vector<int> order(nt);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return t.tri_data[a].lox < t.tri_data[b].lox; });
    for (int oi = 0; oi < nt; ++oi) {
      int i = order[oi];
      std::array<Vec2, 3> pi{project_xy(t.vertices[t.triangles[i][0]]),
                             project_xy(t.vertices[t.triangles[i][1]]),
                             project_xy(t.vertices[t.triangles[i][2]])};
      for (int oj = oi + 1; oj < nt; ++oj) {
        int j = order[oj];
        if (t.tri_data[j].lox > t.tri_data[i].hix) break;
        if (t.tri_data[j].loy > t.tri_data[i].hiy ||
            t.tri_data[j].hiy < t.tri_data[i].loy)
          continue;
        std::array<Vec2, 3> pj{project_xy(t.vertices[t.triangles[j][0]]),
                               project_xy(t.vertices[t.triangles[j][1]]),
                               project_xy(t.vertices[t.triangles[j][2]])};
        if (!projected_interiors_disjoint(pi, pj))
          throw ValidationError("overlap: projected triangles " +
                                std::to_string(i) + " and " + std::to_string(j) +
                                " have intersecting interiors");
      }
    }
  }

  // No vertex on or inside a triangle it does not belong to (rejects
  // T-junctions, which would allow height discontinuities).
  for (int v = 0; v < nv; ++v) {
    Vec2 p = project_xy(t.vertices[v]);
    for (int i = 0; i < nt; ++i) {
      const auto& tr = t.triangles[i];
      if (tr[0] == v || tr[1] == v || tr[2] == v) continue;
      const TriangleData& td = t.tri_data[i];
      if (p.x < td.lox || p.x > td.hix || p.y < td.loy || p.y > td.hiy)
        continue;
      if (point_in_closed_tri(p, project_xy(t.vertices[tr[0]]),
                              project_xy(t.vertices[tr[1]]),
                              project_xy(t.vertices[tr[2]])))
        throw ValidationError("vertex " + std::to_string(v) +
                              " lies on or inside projected triangle " +
                              std::to_string(i));
    }
  }

  // Isolated vertices.
  {
    std::vector<bool> used(nv, false);
    for (const auto& tr : t.triangles)
      for (int v : tr) used[v] = true;
    for (int v = 0; v < nv; ++v)
      if (!used[v])
        throw ValidationError("isolated vertex " + std::to_string(v));
  }

  // Connectivity over shared edges.
  {
    UnionFind uf(nt);
    for (const auto& [key, tris] : edge_map)
      if (tris[1] != -1) uf.unite(tris[0], tris[1]);
    int root = uf.find(0);
    for (int i = 1; i < nt; ++i)
      if (uf.find(i) != root)
        throw ValidationError("projected triangulation is disconnected");
  }

  // Edges, boundary flags, adjacency.
  t.boundary.assign(nv, false);
  t.edges.reserve(edge_map.size());
  t.edge_tris.reserve(edge_map.size());
  for (const auto& [key, tris] : edge_map) {
    t.edges.push_back(key);
    t.edge_tris.push_back(tris);
    if (tris[1] == -1) {
      t.boundary[key.first] = true;
      t.boundary[key.second] = true;
    }
  }
  t.neighbors.assign(nv, {});
  for (const auto& [key, tris] : edge_map) {
    t.neighbors[key.first].push_back(key.second);
    t.neighbors[key.second].push_back(key.first);
  }
  for (auto& nb : t.neighbors) std::sort(nb.begin(), nb.end());

  // Integer view.
  {
    t.int_view.reserve(nv);
    bool ok = true;
    for (const Vec3& p : t.vertices) {
      auto x = as_int64(p.x), y = as_int64(p.y), z = as_int64(p.z);
      if (!x || !y || !z || std::abs(*x) > kIntViewBound ||
          std::abs(*y) > kIntViewBound || std::abs(*z) > kIntViewBound) {
        ok = false;
        break;
      }
      t.int_view.push_back({*x, *y, *z});
    }
    if (!ok) t.int_view.clear();
  }

  // Classes.
  t.classes.assign(nv, VertexClass::Boundary);
  for (int v = 0; v < nv; ++v)
    if (!t.boundary[v]) t.classes[v] = classify_internal(t, v);

  return t;
}

VertexClass classify_vertex(const Terrain2D& t, int v) { return t.classes[v]; }

bool is_local_max(const Terrain2D& t, int v, const Vec3& d) {
  const Vec3& p = t.vertices[v];
  for (int u : t.neighbors[v])
    if (sgn(dot(t.vertices[u] - p, d)) > 0) return false;
  return true;
}

namespace {

// Exact integer local-max test; requires |direction components| < 2^45 and
// terrain coordinates within kIntViewBound so products fit in __int128.
bool is_local_max_int(const Terrain2D& t, int v,
                      const std::array<std::int64_t, 3>& d) {
  const auto& p = t.int_view[v];
  for (int u : t.neighbors[v]) {
    const auto& q = t.int_view[u];
    __int128 s = static_cast<__int128>(q[0] - p[0]) * d[0] +
                 static_cast<__int128>(q[1] - p[1]) * d[1] +
                 static_cast<__int128>(q[2] - p[2]) * d[2];
    if (s > 0) return false;
  }
  return true;
}

constexpr std::int64_t kIntDirBound = (std::int64_t{1} << 45);

std::optional<std::array<std::int64_t, 3>> int_dir(const Vec3& d) {
  auto x = as_int64(d.x), y = as_int64(d.y), z = as_int64(d.z);
  if (!x || !y || !z) return std::nullopt;
  if (std::abs(*x) >= kIntDirBound || std::abs(*y) >= kIntDirBound ||
      std::abs(*z) >= kIntDirBound)
    return std::nullopt;
  return std::array<std::int64_t, 3>{*x, *y, *z};
}

} // namespace

long pi_v(const Terrain2D& t, const Vec3& d) {
  long count = 0;
  if (t.has_int_view()) {
    if (auto di = int_dir(d)) {
      for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v)
        if (t.classes[v] == VertexClass::ConvexInternal &&
            is_local_max_int(t, v, *di))
          ++count;
      return count;
    }
  }
  for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v)
    if (t.classes[v] == VertexClass::ConvexInternal && is_local_max(t, v, d))
      ++count;
  return count;
}

std::vector<int> pi_v_vertices(const Terrain2D& t, const Vec3& d) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v)
    if (t.classes[v] == VertexClass::ConvexInternal && is_local_max(t, v, d))
      out.push_back(v);
  return out;
}

std::optional<int> locate_triangle(const Terrain2D& t, const Vec2& xy) {
  for (int i = 0; i < static_cast<int>(t.triangles.size()); ++i) {
    const TriangleData& td = t.tri_data[i];
    if (xy.x < td.lox || xy.x > td.hix || xy.y < td.loy || xy.y > td.hiy)
      continue;
    const auto& tr = t.triangles[i];
    if (point_in_closed_tri(xy, project_xy(t.vertices[tr[0]]),
                            project_xy(t.vertices[tr[1]]),
                            project_xy(t.vertices[tr[2]])))
      return i;
  }
  return std::nullopt;
}

std::optional<Rat> surface_z_at(const Terrain2D& t, const Vec2& xy) {
  auto tri = locate_triangle(t, xy);
  if (!tri) return std::nullopt;
  const auto& tr = t.triangles[*tri];
  const Vec3& a = t.vertices[tr[0]];
  const Vec3& n = t.tri_data[*tri].normal;
  // n . (p - a) = 0 with p = (xy, z) and n.z > 0.
  return a.z - (n.x * (xy.x - a.x) + n.y * (xy.y - a.y)) / n.z;
}

AffineMap::AffineMap(std::array<std::array<Rat, 3>, 3> l, Vec3 b)
    : linear(std::move(l)), offset(std::move(b)) {
  const auto& m = linear;
  Rat det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
            m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (sgn(det) == 0)
    throw std::invalid_argument("affine map must be invertible");
}

Vec3 AffineMap::apply(const Vec3& p) const {
  const auto& m = linear;
  return Vec3{m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z + offset.x,
              m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z + offset.y,
              m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z + offset.z};
}

Vec3 AffineMap::up_pullback() const {
  return Vec3{linear[2][0], linear[2][1], linear[2][2]};
}

AffineImage apply_affine(const Terrain2D& t, const AffineMap& a) {
  AffineImage img;
  img.vertices.reserve(t.vertices.size());
  for (const Vec3& p : t.vertices) img.vertices.push_back(a.apply(p));
  img.triangles = t.triangles;
  img.extremal_count = pi_v(t, a.up_pullback());
  return img;
}

} // namespace prickle
