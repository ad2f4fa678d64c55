#include "prickle/cones.hpp"

#include "prickle/linear_feasibility.hpp"
#include "prickle/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace prickle {

namespace {

constexpr std::array<CubeFace, 5> kFaces = {CubeFace::Top, CubeFace::PosX,
                                            CubeFace::NegX, CubeFace::PosY,
                                            CubeFace::NegY};

// Face-local halfplane a*u + b*v + c <= 0 equivalent to dot(n, dir(u,v)) <= 0.
std::array<Rat, 3> face_halfplane(CubeFace f, const Vec3& n) {
  switch (f) {
  case CubeFace::Top:  return {n.x, n.y, n.z};
  case CubeFace::PosX: return {n.y, n.z, n.x};
  case CubeFace::NegX: return {n.y, n.z, -n.x};
  case CubeFace::PosY: return {n.x, n.z, n.y};
  case CubeFace::NegY: return {n.x, n.z, -n.y};
  }
  throw std::logic_error("unreachable");
}

std::vector<Vec2> face_rect(CubeFace f) {
  const Rat one(1), zero(0);
  if (f == CubeFace::Top)
    return {{-one, -one}, {one, -one}, {one, one}, {-one, one}};
  return {{-one, zero}, {one, zero}, {one, one}, {-one, one}};
}

std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Rat& a,
                                 const Rat& b, const Rat& c) {
  std::vector<Vec2> out;
  const size_t n = poly.size();
  auto eval = [&](const Vec2& p) -> Rat { return a * p.x + b * p.y + c; };
  for (size_t i = 0; i < n; ++i) {
    const Vec2& cur = poly[i];
    const Vec2& nxt = poly[(i + 1) % n];
    const Rat fc = eval(cur);
    const Rat fn = eval(nxt);
    const bool inc = sign(fc) <= 0;
    const bool inn = sign(fn) <= 0;
    if (inc)
      out.push_back(cur);
    if (inc != inn) {
      const Rat t = fc / (fc - fn);
      out.push_back({cur.x + (nxt.x - cur.x) * t, cur.y + (nxt.y - cur.y) * t});
    }
  }
  return out;
}

void dedupe_consecutive(std::vector<Vec2>& pts) {
  std::vector<Vec2> out;
  for (const Vec2& p : pts)
    if (out.empty() || !(out.back() == p))
      out.push_back(p);
  while (out.size() > 1 && out.front() == out.back())
    out.pop_back();
  pts = std::move(out);
}

// Collapses a collinear vertex loop to its two extreme points.
void canonicalize_degenerate(std::vector<Vec2>& pts) {
  if (pts.size() < 3)
    return;
  for (size_t i = 2; i < pts.size(); ++i)
    if (sign(orient2d(pts[0], pts[1], pts[i])) != 0)
      return;
  auto lex = [](const Vec2& a, const Vec2& b) {
    const int cx = cmp(a.x, b.x);
    return cx != 0 ? cx < 0 : cmp(a.y, b.y) < 0;
  };
  const Vec2 lo = *std::min_element(pts.begin(), pts.end(), lex);
  const Vec2 hi = *std::max_element(pts.begin(), pts.end(), lex);
  pts = lo == hi ? std::vector<Vec2>{lo} : std::vector<Vec2>{lo, hi};
}

struct FaceBBox {
  Rat lox, hix, loy, hiy;
};

FaceBBox bbox_of(const FacePolygon& poly) {
  FaceBBox b{poly.pts[0].x, poly.pts[0].x, poly.pts[0].y, poly.pts[0].y};
  for (const Vec2& p : poly.pts) {
    if (p.x < b.lox) b.lox = p.x;
    if (p.x > b.hix) b.hix = p.x;
    if (p.y < b.loy) b.loy = p.y;
    if (p.y > b.hiy) b.hiy = p.y;
  }
  return b;
}

bool bbox_contains(const FaceBBox& b, const Vec2& p) {
  return p.x >= b.lox && p.x <= b.hix && p.y >= b.loy && p.y <= b.hiy;
}

bool bbox_overlap(const FaceBBox& a, const FaceBBox& b) {
  return a.lox <= b.hix && b.lox <= a.hix && a.loy <= b.hiy && b.loy <= a.hiy;
}

// Proper-crossing intersection point of segments (a,b) and (c,d). Touching
// configurations are covered by the vertex candidates.
std::optional<Vec2> segment_crossing(const Vec2& a, const Vec2& b,
                                     const Vec2& c, const Vec2& d) {
  const Rat fa = cross(d - c, a - c);
  const Rat fb = cross(d - c, b - c);
  if (sign(fa) * sign(fb) >= 0)
    return std::nullopt;
  const Rat ga = cross(b - a, c - a);
  const Rat gb = cross(b - a, d - a);
  if (sign(ga) * sign(gb) >= 0)
    return std::nullopt;
  const Rat t = fa / (fa - fb);
  return Vec2{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

Vec2 interior_point(const FacePolygon& poly) {
  Rat sx(0), sy(0);
  for (const Vec2& p : poly.pts) {
    sx += p.x;
    sy += p.y;
  }
  const Rat k(static_cast<long>(poly.pts.size()));
  return {sx / k, sy / k};
}

bool lex_less(const Vec2& a, const Vec2& b) {
  const int cx = cmp(a.x, b.x);
  return cx != 0 ? cx < 0 : cmp(a.y, b.y) < 0;
}

} // namespace

SphericalCone cone(const Terrain2D& t, int v) {
  if (v < 0 || static_cast<size_t>(v) >= t.vertices.size())
    throw std::invalid_argument("cone: vertex index out of range");
  if (t.boundary[v])
    throw std::invalid_argument("cone: vertex " + std::to_string(v) +
                                " is on the terrain boundary");
  SphericalCone c;
  c.owner = v;
  const Vec3& p = t.vertices[v];
  c.normals.reserve(t.neighbors[v].size());
  for (int u : t.neighbors[v])
    c.normals.push_back(t.vertices[u] - p);
  return c;
}

bool cone_contains(const SphericalCone& c, const Vec3& dir) {
  for (const Vec3& n : c.normals)
    if (sign(dot(n, dir)) > 0)
      return false;
  return true;
}

std::optional<Vec3> cone_interior_direction(const SphericalCone& c) {
  std::vector<StrictRow> rows;
  rows.reserve(c.normals.size());
  for (const Vec3& n : c.normals)
    rows.push_back({n.x, n.y, n.z});
  const auto ab = solve_strict_2var(rows);
  if (!ab)
    return std::nullopt;
  return Vec3{(*ab)[0], (*ab)[1], Rat(1)};
}

Vec3 face_point_to_direction(CubeFace f, const Vec2& local) {
  const Rat one(1);
  switch (f) {
  case CubeFace::Top:  return {local.x, local.y, one};
  case CubeFace::PosX: return {one, local.x, local.y};
  case CubeFace::NegX: return {-one, local.x, local.y};
  case CubeFace::PosY: return {local.x, one, local.y};
  case CubeFace::NegY: return {local.x, -one, local.y};
  }
  throw std::logic_error("unreachable");
}

std::vector<FacePolygon> project_to_cube(const SphericalCone& c) {
  std::vector<FacePolygon> out;
  for (CubeFace f : kFaces) {
    std::vector<Vec2> poly = face_rect(f);
    for (const Vec3& n : c.normals) {
      const auto [a, b, cc] = face_halfplane(f, n);
      poly = clip_halfplane(poly, a, b, cc);
      if (poly.empty())
        break;
    }
    dedupe_consecutive(poly);
    canonicalize_degenerate(poly);
    if (!poly.empty())
      out.push_back({f, std::move(poly), c.owner});
  }
  return out;
}

bool face_polygon_contains(const FacePolygon& poly, const Vec2& p) {
  const auto& pts = poly.pts;
  if (pts.size() == 1)
    return pts[0] == p;
  if (pts.size() == 2) {
    if (sign(orient2d(pts[0], pts[1], p)) != 0)
      return false;
    const Vec2 seg = pts[1] - pts[0];
    const Rat t = dot(seg, p - pts[0]);
    return sign(t) >= 0 && t <= dot(seg, seg);
  }
  for (size_t i = 0; i < pts.size(); ++i)
    if (sign(orient2d(pts[i], pts[(i + 1) % pts.size()], p)) < 0)
      return false;
  return true;
}

OverlapWitness max_overlap(const std::vector<FacePolygon>& polys) {
  OverlapWitness best; // depth 0, top face, origin
  for (CubeFace f : kFaces) {
    std::vector<const FacePolygon*> on_face;
    for (const FacePolygon& p : polys)
      if (p.face == f)
        on_face.push_back(&p);
    if (on_face.empty())
      continue;

    std::vector<FaceBBox> boxes;
    boxes.reserve(on_face.size());
    for (const FacePolygon* p : on_face)
      boxes.push_back(bbox_of(*p));

    std::vector<Vec2> cands;
    for (const FacePolygon* p : on_face) {
      cands.insert(cands.end(), p->pts.begin(), p->pts.end());
      cands.push_back(interior_point(*p));
    }
    for (size_t i = 0; i < on_face.size(); ++i) {
      const auto& pi = on_face[i]->pts;
      if (pi.size() < 2)
        continue;
      for (size_t j = i + 1; j < on_face.size(); ++j) {
        if (!bbox_overlap(boxes[i], boxes[j]))
          continue;
        const auto& pj = on_face[j]->pts;
        if (pj.size() < 2)
          continue;
        const size_t ei = pi.size() == 2 ? 1 : pi.size();
        const size_t ej = pj.size() == 2 ? 1 : pj.size();
        for (size_t a = 0; a < ei; ++a)
          for (size_t b = 0; b < ej; ++b)
            if (auto x = segment_crossing(pi[a], pi[(a + 1) % pi.size()],
                                          pj[b], pj[(b + 1) % pj.size()]))
              cands.push_back(*x);
      }
    }
    std::sort(cands.begin(), cands.end(), lex_less);
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    for (const Vec2& cand : cands) {
      long depth = 0;
      for (size_t i = 0; i < on_face.size(); ++i)
        if (bbox_contains(boxes[i], cand) &&
            face_polygon_contains(*on_face[i], cand))
          ++depth;
      if (depth > best.depth)
        best = {depth, f, cand};
    }
  }
  return best;
}

Prickliness2DResult prickliness_2d(const Terrain2D& t) {
  std::vector<FacePolygon> polys;
  bool any = false;
  for (size_t v = 0; v < t.vertices.size(); ++v) {
    if (t.classes[v] != VertexClass::ConvexInternal)
      continue;
    any = true;
    auto projected = project_to_cube(cone(t, static_cast<int>(v)));
    polys.insert(polys.end(), std::make_move_iterator(projected.begin()),
                 std::make_move_iterator(projected.end()));
  }
  if (!any)
    return {};
  const OverlapWitness w = max_overlap(polys);
  if (w.depth == 0)
    return {};
  Prickliness2DResult res;
  res.value = w.depth;
  res.witness = Direction3::from(face_point_to_direction(w.face, w.point));
  res.contributors = pi_v_vertices(t, res.witness.v);
  return res;
}

namespace {

// Candidate directions deduplicated by ray; insertion order is preserved so
// ties resolve deterministically. Integer vectors get a cheap primitive-form
// key; everything else falls back to the canonical rational form.
class CandidateSet {
public:
  bool add(const Vec3& d) {
    if (is_zero(d) || sign(d.z) < 0)
      return false;
    const auto ix = as_int64(d.x), iy = as_int64(d.y), iz = as_int64(d.z);
    if (ix && iy && iz) {
      std::array<long long, 3> key{*ix, *iy, *iz};
      long long g = std::gcd(std::gcd(std::abs(key[0]), std::abs(key[1])),
                             std::abs(key[2]));
      for (auto& k : key)
        k /= g;
      if (!int_keys_.insert(key).second)
        return false;
    } else {
      const Direction3 canon = Direction3::from(d);
      std::array<Rat, 3> key{canon.v.x, canon.v.y, canon.v.z};
      if (!rat_keys_.insert(key).second)
        return false;
    }
    dirs.push_back(d);
    return true;
  }

  std::vector<Vec3> dirs;

private:
  struct RatKeyLess {
    bool operator()(const std::array<Rat, 3>& a,
                    const std::array<Rat, 3>& b) const {
      for (int i = 0; i < 3; ++i) {
        const int c = cmp(a[i], b[i]);
        if (c != 0)
          return c < 0;
      }
      return false;
    }
  };
  std::set<std::array<long long, 3>> int_keys_;
  std::set<std::array<Rat, 3>, RatKeyLess> rat_keys_;
};

} // namespace

Prickliness2DResult brute_force_2d(const Terrain2D& t) {
  std::vector<SphericalCone> cones;
  for (size_t v = 0; v < t.vertices.size(); ++v)
    if (t.classes[v] == VertexClass::ConvexInternal)
      cones.push_back(cone(t, static_cast<int>(v)));
  if (cones.empty())
    return {};

  CandidateSet cands;
  cands.add(Vec3{Rat(0), Rat(0), Rat(1)});

  std::vector<Vec3> normals;
  for (const SphericalCone& c : cones)
    normals.insert(normals.end(), c.normals.begin(), c.normals.end());
  for (size_t i = 0; i < normals.size(); ++i)
    for (size_t j = i + 1; j < normals.size(); ++j) {
      const Vec3 d = cross(normals[i], normals[j]);
      cands.add(d);
      cands.add(Vec3{-d.x, -d.y, -d.z});
    }
  for (const SphericalCone& c : cones)
    if (auto rep = cone_interior_direction(c))
      cands.add(*rep);

  Prickliness2DResult res;
  Vec3 best_dir{Rat(0), Rat(0), Rat(1)};
  for (const Vec3& d : cands.dirs) {
    const long v = pi_v(t, d);
    if (v > res.value) {
      res.value = v;
      best_dir = d;
    }
  }
  if (res.value == 0)
    return {};
  res.witness = Direction3::from(best_dir);
  res.contributors = pi_v_vertices(t, best_dir);
  return res;
}

namespace {

Rat tan_approx_deg(const Rat& deg, long denominator) {
  const double x = mpq_get_d(deg.get_mpq_t()) * 3.14159265358979323846 / 180.0;
  const double tt = std::tan(x);
  const long num =
      static_cast<long>(std::llround(tt * static_cast<double>(denominator)));
  return rat(num, denominator);
}

} // namespace

Vec3 heatmap_direction(const Rat& east_offset_deg, const Rat& north_offset_deg,
                       long tan_denominator) {
  const Rat te = tan_approx_deg(east_offset_deg, tan_denominator);
  const Rat tn = tan_approx_deg(north_offset_deg, tan_denominator);
  const Rat s(tan_denominator);
  return {te * s, tn * s, s};
}

DirectionGrid heatmap(const Terrain2D& t, int res, const Rat& max_offset_deg) {
  if (res < 1)
    throw std::invalid_argument("heatmap: resolution must be >= 1");
  if (sign(max_offset_deg) < 0 || max_offset_deg >= Rat(90))
    throw std::invalid_argument("heatmap: max offset must be in [0, 90)");
  DirectionGrid g;
  g.res = res;
  g.max_offset_deg = max_offset_deg;
  if (res == 1) {
    g.offsets.push_back(Rat(0));
  } else {
    for (int i = 0; i < res; ++i)
      g.offsets.push_back(-max_offset_deg +
                          rat(2 * i, res - 1) * max_offset_deg);
  }
  g.values.resize(static_cast<size_t>(res) * res);
  for (int r = 0; r < res; ++r)
    for (int c = 0; c < res; ++c) {
      const Vec3 dir = heatmap_direction(g.offsets[c], g.offsets[res - 1 - r],
                                         g.tan_denominator);
      g.values[static_cast<size_t>(r) * res + c] = pi_v(t, dir);
    }
  return g;
}

} // namespace prickle
