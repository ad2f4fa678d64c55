#pragma once

#include "prickle/terrain.hpp"
#include "prickle/viewshed.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace prickle {

struct Gen1D {
  Terrain1D terrain;
  Vec2 viewpoint; // canonical viewpoint on the surface
};

struct Gen2D {
  Terrain2D terrain;
  Viewpoint viewpoint; // canonical viewpoint at a terrain vertex
};

// k spikes on a front comb row, an apron row aligned with the comb, and m-1
// long back rows whose heights follow a strictly convex profile, so every
// back row is visible from the front vertex through every gap between
// spikes. Prickliness is exactly k (the spike apexes) while the viewshed
// from the canonical viewpoint has on the order of k*m vertices, i.e.
// quadratic in n. Requires n >= 16, n divisible by 4; produces exactly n
// vertices with k = n/8 spikes and m = n/2 - 2k - 1 rows.
Gen2D gen_quadratic(int n);

// Same comb-and-back-rows skeleton with independent k (spikes) and m (back
// rows), enclosed by a box rim that follows the footprint just outside it,
// at a height midway between the tallest back row and the spike peaks. The
// rim walls off the back rows without adding convex vertices, so prickliness
// stays k while the viewshed from the front vertex keeps its k*m
// transitions. Requires k >= 2, m >= 2.
Gen2D gen_boxed_mountains_2d(int k, int m);

// Sawtooth polyline whose n/2 teeth sit on rays from the origin into the
// fourth quadrant, roughly 2/n radians apart, with radii growing by a factor
// 5/2 from ray to ray (an exact rational rotation is used, so consecutive
// sections are exactly similar). Each ray carries a convex tooth v_i and,
// beyond it on the same ray, a non-convex pit w_i = 3/2 * v_i. Consecutive
// tooth sectors overlap and sectors two apart are disjoint, so prickliness
// is 2 for every n. From the canonical viewpoint (a point `viewpoint_frac`
// of the way along the first edge, default 1/n^2) each tooth hides the pit
// edge behind it, so the viewshed has on the order of n intervals.
// Requires n >= 8 and even; produces exactly n vertices.
Gen1D gen_spiral_teeth_1d(int n, const std::optional<Rat>& viewpoint_frac = std::nullopt);

// One convex vertex per element of S whose angular sector is exactly
// [x'_i - eps, x'_i + eps] degrees with x'_i = S_i * 180 / (max(S)+1) and
// eps = 18 / (max(S)+1), separated by tall dummy peaks whose sectors cover
// the whole band [min x' - eps, max x' + eps]. Distinct elements give
// pairwise-disjoint sectors (centers at least 180/(max(S)+1) degrees apart,
// width 36/(max(S)+1)), so prickliness equals |S| exactly when the elements
// are pairwise distinct and exceeds |S| otherwise. Elements must be positive
// integers; S must be nonempty.
Terrain1D gen_element_distinctness_1d(const std::vector<long>& S);

// Four directions with positive z, listed around the boundary of a spherical
// quadrilateral (the cone they span must be full-dimensional).
struct SphericalRectangle {
  std::array<Vec3, 4> corners;
};

struct ConeGadget {
  Terrain2D terrain;
  int center; // index of the apex vertex
};

// Five-vertex wheel (an apex surrounded by four neighbors) whose apex cone of
// maximal directions is exactly the cone spanned by the given corners: each
// neighbor offset is a negated side-plane normal of the spherical rectangle,
// scaled to roughly unit length. Throws std::invalid_argument if a corner has
// nonpositive z, the corners are not in convex position, or the wheel would
// degenerate in projection.
ConeGadget gen_cone_gadget(const SphericalRectangle& rect);

// Jittered grid of about sqrt(n) columns with smooth random bumps plus
// per-vertex noise scaled by `roughness` in [0, 1]. Deterministic in (n,
// seed, roughness); all coordinates are integers. Requires n >= 3; produces
// exactly n vertices.
Terrain2D gen_random(int n, unsigned long seed, const Rat& roughness);

// Jittered 1.5D polyline with smooth random bumps plus small noise.
// Deterministic in (n, seed); integer coordinates. Requires n >= 2.
Terrain1D gen_random_1d(int n, unsigned long seed);

enum class DiagonalRule { LowerLeftUpperRight, LowerRightUpperLeft };

// Regular unit-spacing grid terrain from a rectangular height matrix
// (heights[row][col]; row increases with y). Each cell is split along the
// chosen diagonal (default lower-left to upper-right). Requires at least 2x2.
Terrain2D gen_grid(const std::vector<std::vector<Rat>>& heights,
                   DiagonalRule rule = DiagonalRule::LowerLeftUpperRight);

// Family name plus key=value parameters; the CLI builds terrains from these.
struct GeneratorSpec {
  std::string family;
  std::map<std::string, std::string> params;
};

// Exactly one of t1/t2 is set. The canonical viewpoint is present for the
// families that define one.
struct GeneratedTerrain {
  std::optional<Terrain1D> t1;
  std::optional<Terrain2D> t2;
  std::optional<Vec2> viewpoint1;
  std::optional<Viewpoint> viewpoint2;
};

// Dispatches on spec.family: "quadratic" (n), "boxed-mountains" (k, m),
// "spiral-teeth" (n, optional frac), "element-distinctness" (s=a,b,c),
// "cone-gadget" (c0..c3 = x,y,z), "random" (n, seed, optional roughness),
// "random-1d" (n, seed), "grid" (rows, cols, heights=row-major list,
// optional diagonal=ll-ur|lr-ul). Unknown family, unknown key, or a
// malformed value throws std::invalid_argument.
GeneratedTerrain make_terrain(const GeneratorSpec& spec);

// Exact-rational unit vector whose angle from the positive x-axis is deg
// degrees up to about 1e-12 (cos/sin of a rational tan-half-angle). The
// result has length exactly 1.
Vec2 unit_direction_deg(const Rat& deg);

} // namespace prickle
