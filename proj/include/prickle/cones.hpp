#pragma once

#include "prickle/terrain.hpp"

#include <optional>
#include <vector>

namespace prickle {

// Closed convex cone of directions in which the owner vertex is a local
// maximum: {d : dot(d, n) <= 0 for every n}, with one outward normal per
// incident edge (n = neighbor - vertex).
struct SphericalCone {
  int owner = -1;
  std::vector<Vec3> normals;
};

SphericalCone cone(const Terrain2D& t, int v); // throws on boundary vertex

bool cone_contains(const SphericalCone& c, const Vec3& dir);

// A direction strictly inside the cone with positive z; exists whenever the
// owner is ConvexInternal.
std::optional<Vec3> cone_interior_direction(const SphericalCone& c);

// Cube faces used to linearize direction space: the top face z=1 and the four
// side faces clipped to z >= 0. The bottom face is never needed because the
// cone of a convex internal vertex lies in the closed upper halfspace.
enum class CubeFace { Top, PosX, NegX, PosY, NegY };

Vec3 face_point_to_direction(CubeFace f, const Vec2& local);

// Convex (possibly degenerate: point or segment) region of one cube face, in
// face-local coordinates, CCW.
struct FacePolygon {
  CubeFace face;
  std::vector<Vec2> pts;
  int owner = -1;
};

// Intersection of the cone with the five processed cube faces. The union of
// the outputs covers exactly the cone's directions with z >= 0.
std::vector<FacePolygon> project_to_cube(const SphericalCone& c);

bool face_polygon_contains(const FacePolygon& poly, const Vec2& p);

struct OverlapWitness {
  long depth = 0;
  CubeFace face = CubeFace::Top;
  Vec2 point{Rat(0), Rat(0)};
};

// Maximum overlap depth over the cube faces. Candidates: every polygon vertex,
// every pairwise edge intersection, one interior point per polygon. Exact.
OverlapWitness max_overlap(const std::vector<FacePolygon>& polys);

struct Prickliness2DResult {
  long value = 0;
  Direction3 witness{Vec3{Rat(0), Rat(0), Rat(1)}};
  std::vector<int> contributors;
};

// Exact prickliness via cone projection onto the cube and max overlap.
Prickliness2DResult prickliness_2d(const Terrain2D& t);

// Independent oracle: evaluates pi_v on (0,0,1), on every pairwise
// cone-boundary-plane intersection direction (both signs, z >= 0), and on one
// interior direction per cone.
Prickliness2DResult brute_force_2d(const Terrain2D& t);

// pi_v sampled on a square grid of view directions parameterized by angular
// offsets from vertical (degrees east, degrees north), tan approximated as
// rationals with denominator <= 10^6.
struct DirectionGrid {
  int res = 0;
  Rat max_offset_deg;
  std::vector<Rat> offsets;  // ascending, res entries
  std::vector<long> values;  // row-major; row 0 = largest north offset
  long tan_denominator = 1000000;
};

DirectionGrid heatmap(const Terrain2D& t, int res, const Rat& max_offset_deg);

// The direction sampled for a pair of angular offsets (exact, scaled so the
// components are integers).
Vec3 heatmap_direction(const Rat& east_offset_deg, const Rat& north_offset_deg,
                       long tan_denominator);

} // namespace prickle
