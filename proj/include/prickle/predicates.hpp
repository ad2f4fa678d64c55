#pragma once

#include "prickle/vec.hpp"

#include <optional>
#include <vector>

namespace prickle {

// Sign of the determinant of (b-a, c-a, d-a): +1 if d is on the positive side
// of the oriented plane through a, b, c, 0 if coplanar, -1 otherwise.
int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

// Sign of cross(b-a, c-a): +1 if a,b,c make a left turn.
int orient2d(const Vec2& a, const Vec2& b, const Vec2& c);

// Canonical direction of the intersection line of two planes through the
// origin with normals n1, n2; nullopt when the planes are parallel.
std::optional<Direction3> plane_pair_direction(const Vec3& n1, const Vec3& n2);

struct RayHit {
  Rat t;            // smallest t >= 0 with origin + t*dir in the closed triangle
  bool on_boundary; // hit point lies on the triangle boundary
};

// Exact ray/triangle intersection (closed triangle). Handles the coplanar case
// (ray inside the triangle plane) by clipping the ray against the triangle.
// Throws std::invalid_argument on a degenerate (zero-area) triangle.
std::optional<RayHit> ray_triangle_intersect(const Vec3& origin, const Vec3& dir,
                                             const Vec3& a, const Vec3& b,
                                             const Vec3& c);

enum class PointLocation { Inside, Boundary, Outside };

// Exact location of p relative to a convex polygon given in CCW order.
// Throws std::invalid_argument if the polygon is degenerate or non-convex.
PointLocation point_in_convex_polygon_2d(const Vec2& p,
                                         const std::vector<Vec2>& poly);

} // namespace prickle
