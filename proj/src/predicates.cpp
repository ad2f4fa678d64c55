#include "prickle/predicates.hpp"

#include <stdexcept>

namespace prickle {

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  Vec3 u = b - a, v = c - a, w = d - a;
  return sgn(dot(cross(u, v), w));
}

int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  return sgn(cross(b - a, c - a));
}

std::optional<Direction3> plane_pair_direction(const Vec3& n1, const Vec3& n2) {
  Vec3 d = cross(n1, n2);
  if (is_zero(d)) return std::nullopt;
  return Direction3::from(d);
}

std::optional<RayHit> ray_triangle_intersect(const Vec3& origin, const Vec3& dir,
                                             const Vec3& a, const Vec3& b,
                                             const Vec3& c) {
  Vec3 n = cross(b - a, c - a);
  if (is_zero(n)) throw std::invalid_argument("degenerate triangle");
  if (is_zero(dir)) throw std::invalid_argument("zero ray direction");

  const Vec3* tri[3] = {&a, &b, &c};
  auto on_boundary = [&](const Vec3& hit) {
    for (int i = 0; i < 3; ++i) {
      const Vec3& p = *tri[i];
      const Vec3& q = *tri[(i + 1) % 3];
      if (sgn(dot(hit - p, cross(n, q - p))) == 0) return true;
    }
    return false;
  };

  Rat denom = dot(n, dir);
  Rat num = dot(n, a - origin);

  if (sgn(denom) == 0) {
    if (sgn(num) != 0) return std::nullopt; // parallel, off-plane
    // Coplanar: clip t >= 0 against the three inward edge halfplanes.
    Rat lo(0), hi;
    bool has_hi = false;
    for (int i = 0; i < 3; ++i) {
      const Vec3& p = *tri[i];
      const Vec3& q = *tri[(i + 1) % 3];
      Vec3 inward = cross(n, q - p);
      Rat f0 = dot(origin - p, inward);
      Rat df = dot(dir, inward);
      int sd = sgn(df);
      if (sd == 0) {
        if (sgn(f0) < 0) return std::nullopt;
        continue;
      }
      Rat t0 = -f0 / df;
      if (sd > 0) {
        if (t0 > lo) lo = t0;
      } else {
        if (!has_hi || t0 < hi) {
          hi = t0;
          has_hi = true;
        }
      }
      if (has_hi && lo > hi) return std::nullopt;
    }
    Vec3 hit = origin + dir * lo;
    return RayHit{lo, on_boundary(hit)};
  }

  Rat t = num / denom;
  if (sgn(t) < 0) return std::nullopt;
  Vec3 hit = origin + dir * t;
  bool boundary = false;
  for (int i = 0; i < 3; ++i) {
    const Vec3& p = *tri[i];
    const Vec3& q = *tri[(i + 1) % 3];
    int s = sgn(dot(hit - p, cross(n, q - p)));
    if (s < 0) return std::nullopt;
    if (s == 0) boundary = true;
  }
  return RayHit{t, boundary};
}

PointLocation point_in_convex_polygon_2d(const Vec2& p,
                                         const std::vector<Vec2>& poly) {
  size_t k = poly.size();
  if (k < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  bool strictly_convex_somewhere = false;
  for (size_t i = 0; i < k; ++i) {
    int s = orient2d(poly[i], poly[(i + 1) % k], poly[(i + 2) % k]);
    if (s < 0) throw std::invalid_argument("polygon not convex CCW");
    if (s > 0) strictly_convex_somewhere = true;
  }
  if (!strictly_convex_somewhere)
    throw std::invalid_argument("degenerate polygon");

  bool boundary = false;
  for (size_t i = 0; i < k; ++i) {
    int s = orient2d(poly[i], poly[(i + 1) % k], p);
    if (s < 0) return PointLocation::Outside;
    if (s == 0) boundary = true;
  }
  return boundary ? PointLocation::Boundary : PointLocation::Inside;
}

} // namespace prickle
