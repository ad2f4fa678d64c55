#pragma once

#include "prickle/predicates.hpp"
#include "prickle/vec.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prickle {

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class VertexClass { ConvexInternal, ConcaveInternal, SaddleOrOther, Boundary };

const char* to_string(VertexClass c);

// x-monotone polyline terrain (x strictly increasing).
struct Terrain1D {
  std::vector<Vec2> vertices;
};

// Throws ValidationError unless the polyline has >= 2 vertices with strictly
// increasing x.
Terrain1D validate_terrain1d(std::vector<Vec2> vertices);

VertexClass classify_vertex(const Terrain1D& t, int v);

// v is a local maximum of its closed neighborhood in direction d.
bool is_local_max(const Terrain1D& t, int v, const Vec2& d);

// Number of internal convex vertices that are local maxima in direction d.
long pi_v(const Terrain1D& t, const Vec2& d);

struct TriangleData {
  Vec3 normal;           // cross(b-a, c-a); z-component positive for CCW
  Rat lox, hix, loy, hiy; // projected bounding box
  Rat loz, hiz;           // height range
};

// xy-monotone triangulated terrain. Immutable after validation; adjacency,
// boundary flags and vertex classes are precomputed.
struct Terrain2D {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles; // CCW in projection
  std::vector<TriangleData> tri_data;
  std::vector<std::pair<int, int>> edges;     // undirected, first < second
  std::vector<std::array<int, 2>> edge_tris;  // incident triangles, -1 if none
  std::vector<std::vector<int>> neighbors;    // sorted unique adjacent vertices
  std::vector<bool> boundary;
  std::vector<VertexClass> classes;

  // Integer coordinate view for exact fast-path predicates; empty when any
  // coordinate is non-integer or too large.
  std::vector<std::array<std::int64_t, 3>> int_view;

  bool has_int_view() const { return !int_view.empty(); }
};

// Builds the terrain and checks: index validity, no duplicate projected
// vertices, positive projected area and CCW orientation for every triangle,
// manifold edges with consistent orientation, pairwise-disjoint projected
// interiors, no vertex inside or on another triangle's projection,
// connectivity. Throws ValidationError with the offending indices.
Terrain2D validate_terrain2d(std::vector<Vec3> vertices,
                             std::vector<std::array<int, 3>> triangles);

VertexClass classify_vertex(const Terrain2D& t, int v);

bool is_local_max(const Terrain2D& t, int v, const Vec3& d);

// Number of ConvexInternal vertices of t that are local maxima in direction d.
long pi_v(const Terrain2D& t, const Vec3& d);
std::vector<int> pi_v_vertices(const Terrain2D& t, const Vec3& d);

// Height of the surface over a projected point, nullopt outside the domain.
std::optional<Rat> surface_z_at(const Terrain2D& t, const Vec2& xy);
// Index of some triangle whose closed projection contains xy.
std::optional<int> locate_triangle(const Terrain2D& t, const Vec2& xy);

// Invertible affine map x -> L*x + b.
struct AffineMap {
  std::array<std::array<Rat, 3>, 3> linear;
  Vec3 offset;

  AffineMap(std::array<std::array<Rat, 3>, 3> l, Vec3 b);
  Vec3 apply(const Vec3& p) const;
  // Direction whose local maxima correspond to +z local maxima after the map:
  // the third row of the linear part.
  Vec3 up_pullback() const;
};

struct AffineImage {
  std::vector<Vec3> vertices; // transformed copy (not re-validated)
  std::vector<std::array<int, 3>> triangles;
  long extremal_count; // ConvexInternal vertices of the source terrain that are
                       // local maxima in +z after the map
};

AffineImage apply_affine(const Terrain2D& t, const AffineMap& a);

} // namespace prickle
