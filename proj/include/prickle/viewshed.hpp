#pragma once

#include "prickle/terrain.hpp"

#include <optional>
#include <vector>

namespace prickle {

// A point on the terrain surface (vertex, edge or face point) that sight
// lines are cast from. `vertex` is the vertex index when the viewpoint sits
// on one, -1 otherwise.
struct Viewpoint {
  Vec3 position{Rat(0), Rat(0), Rat(0)};
  int vertex = -1;
};

Viewpoint viewpoint_at_vertex(const Terrain2D& t, int v);
Viewpoint viewpoint_on_surface(const Terrain2D& t, const Vec2& xy);

// True iff no point of the open segment pq lies strictly below the surface;
// tangential grazing does not block. Throws if p or q is strictly below the
// surface.
bool visible(const Terrain2D& t, const Vec3& p, const Vec3& q);

// --- 1.5D ---------------------------------------------------------------

struct Interval1D {
  Rat lo, hi; // closed, lo <= hi
};

struct VisibleIntervals1D {
  std::vector<Interval1D> intervals; // disjoint, sorted by lo
};

// Maximal visible x-intervals from a viewpoint on the terrain. Throws if p is
// not on the surface.
VisibleIntervals1D viewshed_1d(const Terrain1D& t, const Vec2& p);

// --- 2.5D ---------------------------------------------------------------

// Counts of viewshed-boundary features seen from one viewpoint:
//   type1: terrain vertices visible from the viewpoint
//   type2: visibility transitions in edge interiors (edge crossing the shadow
//          sheet of another edge)
//   type3: crossings of two shadow sheets in a triangle interior
// A point that qualifies for several types is counted once, as the lowest
// type number. edge_part_counts[i] is the number of maximal constant-
// visibility portions of edges[i].
struct ViewshedStats {
  long type1 = 0;
  long type2 = 0;
  long type3 = 0;
  std::vector<long> edge_part_counts;
  long total = 0;
};

// Brute-force enumeration over edge/sheet and sheet/sheet/triangle
// combinations with exact intersections and exact visibility filtering.
// `height_offset` lifts the eye vertically above the viewpoint.
ViewshedStats viewshed_vertices_2d(const Terrain2D& t, const Viewpoint& p,
                                   const Rat& height_offset = Rat(0));

// Number of maximal visible/invisible portions of edge e.
long edge_parts(const Terrain2D& t, const Viewpoint& p, int e,
                const Rat& height_offset = Rat(0));

// Greedy high-point selection: vertices by height descending, accepting one
// when its projected distance to every accepted vertex is at least the
// separation. The separation is given squared to stay rational; default is
// (bounding-box diagonal / 6)^2. May return fewer than k.
std::vector<Viewpoint>
select_viewpoints(const Terrain2D& t, int k,
                  const std::optional<Rat>& min_separation_sq = std::nullopt);

} // namespace prickle
