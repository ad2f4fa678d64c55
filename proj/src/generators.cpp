#include "prickle/generators.hpp"

#include "prickle/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

namespace prickle {

namespace {

BigInt floor_rat(const Rat& q) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

long floor_to_long(const Rat& q) {
  BigInt f = floor_rat(q);
  if (!f.fits_slong_p()) throw std::invalid_argument("value out of range");
  return f.get_si();
}

// Closed arcs of width < 180 degrees intersect iff one contains an endpoint
// of the other.
bool sectors_overlap(const AngularSector& a, const AngularSector& b) {
  if (a.empty || b.empty) return false;
  return sector_contains(a, b.lo) || sector_contains(a, b.hi) ||
         sector_contains(b, a.lo);
}

bool same_ray(const Vec2& a, const Vec2& b) {
  return sign(cross(a, b)) == 0 && sign(dot(a, b)) > 0;
}

} // namespace

Vec2 unit_direction_deg(const Rat& deg) {
  // Normalize into [-180, 180).
  Rat d = deg - Rat(360) * Rat(floor_rat((deg + 180) / 360));
  if (d == -180) return {Rat(-1), Rat(0)};
  if (d > 90) {
    Vec2 u = unit_direction_deg(d - 180);
    return {-u.x, -u.y};
  }
  if (d < -90) {
    Vec2 u = unit_direction_deg(d + 180);
    return {-u.x, -u.y};
  }
  // |d| <= 90, so the half angle's tangent has magnitude at most 1.
  const long long den = 1LL << 40;
  const double half_rad = d.get_d() * (3.14159265358979323846 / 360.0);
  const long long num = std::llround(std::tan(half_rad) * static_cast<double>(den));
  const Rat t = rat(num, den);
  const Rat dd = 1 + t * t;
  return {(1 - t * t) / dd, (2 * t) / dd};
}

// ---------------------------------------------------------------------------
// Comb-and-back-rows skeleton shared by gen_quadratic and
// gen_boxed_mountains_2d, seen from the front vertex P = (0, 0, 0):
//   - a comb row of k spikes at y = 1 (bases at z = 0, apexes at the peak
//     height), joined to P by a triangle fan;
//   - an apron row at y = 3, z = 9 with one vertex under each comb vertex's
//     image (x scaled by 3, the central projection from P onto y = 3) plus
//     one closing vertex on the right. Aligning the apron with the comb
//     keeps every triangle touching a spike apex inside that spike's own
//     shadow; a coarser row here would hang tall walls across the gaps
//     between spikes and occlude everything behind them.
//   - back rows j = 2..m at y = 2 + j: two vertices at x = -+2k*(2+j), so the
//     rows widen with depth at the same rate the view cone from P spreads
//     and every row crosses the shadows of all k+1 gaps. The row heights
//     (2+j)^2 follow a strictly convex profile, so the sight line from P to
//     any row passes above all nearer rows and visibility is governed by
//     the spikes alone.
namespace {

struct CombSkeleton {
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> tris;
  std::vector<int> hull; // CCW boundary cycle starting at the front vertex
  long peak_height = 0;  // spike apex height
  long top_row_height = 0;
};

// 4k + 2m + 2 vertices; requires k >= 2, m >= 2.
CombSkeleton comb_skeleton(int k, int m) {
  CombSkeleton sk;
  const long hm = static_cast<long>(m + 2) * (m + 2);
  const long peak = hm + 4;
  sk.peak_height = peak;
  sk.top_row_height = hm;

  auto v3 = [](long x, long y, long z) {
    return Vec3{Rat(x), Rat(y), Rat(z)};
  };

  sk.verts.push_back(v3(0, 0, 0)); // front vertex P, index 0
  auto comb = [&](int i) { return 1 + i; };
  for (int i = 0; i <= 2 * k; ++i)
    sk.verts.push_back(v3(-2 * k + 2 * i, 1, (i % 2 == 1) ? peak : 0));
  auto apron = [&](int i) { return 2 * k + 2 + i; }; // i = 0 .. 2k+1
  for (int i = 0; i <= 2 * k; ++i)
    sk.verts.push_back(v3(3 * (-2 * k + 2 * i), 3, 9));
  sk.verts.push_back(v3(6 * k + 3, 3, 9));
  const int rows = 4 * k + 4;
  auto left = [&](int j) { return rows + 2 * (j - 2); };
  auto right = [&](int j) { return rows + 2 * (j - 2) + 1; };
  for (int j = 2; j <= m; ++j) {
    const long y = 2 + j;
    sk.verts.push_back(v3(-2 * k * y, y, y * y));
    sk.verts.push_back(v3(2 * k * y, y, y * y));
  }

  for (int i = 0; i < 2 * k; ++i)
    sk.tris.push_back({0, comb(i + 1), comb(i)});
  for (int i = 0; i < 2 * k; ++i) {
    sk.tris.push_back({comb(i), comb(i + 1), apron(i + 1)});
    sk.tris.push_back({comb(i), apron(i + 1), apron(i)});
  }
  sk.tris.push_back({comb(2 * k), apron(2 * k + 1), apron(2 * k)});
  for (int i = 0; i <= 2 * k; ++i)
    sk.tris.push_back({apron(i), apron(i + 1), left(2)});
  sk.tris.push_back({apron(2 * k + 1), right(2), left(2)});
  for (int j = 2; j < m; ++j) {
    sk.tris.push_back({left(j), right(j), right(j + 1)});
    sk.tris.push_back({left(j), right(j + 1), left(j + 1)});
  }

  sk.hull.push_back(0);
  sk.hull.push_back(comb(2 * k));
  sk.hull.push_back(apron(2 * k + 1));
  for (int j = 2; j <= m; ++j) sk.hull.push_back(right(j));
  for (int j = m; j >= 2; --j) sk.hull.push_back(left(j));
  sk.hull.push_back(apron(0));
  sk.hull.push_back(comb(0));
  return sk;
}

// The spike apexes sit at odd comb positions; verify that they are exactly
// the ConvexInternal vertices of the finished terrain.
void check_comb_classes(const Terrain2D& t, int k) {
  std::set<int> apexes;
  for (int i = 1; i <= 2 * k; i += 2) apexes.insert(1 + i);
  for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v) {
    const bool convex = t.classes[v] == VertexClass::ConvexInternal;
    if (convex != (apexes.count(v) > 0))
      throw std::logic_error(
          "comb terrain: ConvexInternal vertices are not exactly the spike "
          "apexes");
  }
}

} // namespace

Gen2D gen_quadratic(int n) {
  if (n < 16 || n % 4 != 0)
    throw std::invalid_argument(
        "gen_quadratic: n must be divisible by 4 and at least 16");
  const int k = n / 8;
  const int m = n / 2 - 2 * k - 1;
  CombSkeleton sk = comb_skeleton(k, m);
  if (static_cast<int>(sk.verts.size()) != n)
    throw std::logic_error("gen_quadratic: unexpected vertex count");
  Terrain2D t = validate_terrain2d(std::move(sk.verts), std::move(sk.tris));
  check_comb_classes(t, k);
  Gen2D out{std::move(t), {}};
  out.viewpoint = viewpoint_at_vertex(out.terrain, 0);
  return out;
}

Gen2D gen_boxed_mountains_2d(int k, int m) {
  if (k < 2 || m < 2)
    throw std::invalid_argument(
        "gen_boxed_mountains_2d: need k >= 2 spikes and m >= 2 back rows");
  CombSkeleton sk = comb_skeleton(k, m);

  // Surrounding ring: scale the boundary cycle by (S+1)/S about (0, 1) and
  // lift it to the box height (midway between the top row and the peaks).
  // The ring must hug the footprint: seen from a top ladder corner the rim
  // sits 2 units up but only 1/S of the corner's offset outward, so with
  // 2S >= (2y-1)(y-1), y = m+2, the rim rules out every candidate direction
  // the row below leaves open; a farther rim would leave those corners
  // convex along steep outward-down directions. Everything is scaled by S
  // first so the ring lands on integer coordinates.
  long scale = 1;
  while (2 * scale < (2L * (m + 2) - 1) * (m + 1)) scale *= 2;
  for (Vec3& v : sk.verts) {
    v.x *= scale;
    v.y *= scale;
    v.z *= scale;
  }
  const long box_height = scale * (sk.top_row_height + 2);

  const int nh = static_cast<int>(sk.hull.size());
  const int ring0 = static_cast<int>(sk.verts.size());
  for (int i = 0; i < nh; ++i) {
    const Vec3& v = sk.verts[sk.hull[i]];
    sk.verts.push_back({v.x * (scale + 1) / scale,
                        (v.y - scale) * (scale + 1) / scale + scale,
                        Rat(box_height)});
  }
  for (int i = 0; i < nh; ++i) {
    const int a = sk.hull[i];
    const int b = sk.hull[(i + 1) % nh];
    const int oa = ring0 + i;
    const int ob = ring0 + (i + 1) % nh;
    sk.tris.push_back({a, oa, ob});
    sk.tris.push_back({a, ob, b});
  }

  Terrain2D t = validate_terrain2d(std::move(sk.verts), std::move(sk.tris));
  check_comb_classes(t, k);
  Gen2D out{std::move(t), {}};
  out.viewpoint = viewpoint_at_vertex(out.terrain, 0);
  return out;
}

Gen1D gen_spiral_teeth_1d(int n, const std::optional<Rat>& viewpoint_frac) {
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument(
        "gen_spiral_teeth_1d: n must be even and at least 8");
  const int rays = n / 2;

  // Exact rational rotation by about 2/n radians (tan of the half angle
  // rounded to a denominator of 2^40).
  const long long den = 1LL << 40;
  const long long num =
      std::llround(std::tan(1.0 / n) * static_cast<double>(den));
  const Rat t = rat(num, den);
  const Rat dd = 1 + t * t;
  const Rat c = (1 - t * t) / dd;
  const Rat s = (2 * t) / dd;
  auto rot_ccw = [&](const Vec2& u) {
    return Vec2{c * u.x - s * u.y, s * u.x + c * u.y};
  };
  auto rot_cw = [&](const Vec2& u) {
    return Vec2{c * u.x + s * u.y, c * u.y - s * u.x};
  };

  const Rat lam = rat(5, 2); // radial growth per ray
  const Rat b = rat(3, 2);   // pit radius relative to its tooth

  // Teeth v_i sit on rays from the origin into the fourth quadrant, rotating
  // counterclockwise toward the horizontal; the pit w_i = b * v_i lies
  // farther out on the same ray. Scaling by lam while rotating one step maps
  // each tooth/pit pair exactly onto the next, so every tooth shows the same
  // turn angle and its sector is the previous one rotated by exactly one ray
  // step. The leading vertex p is the virtual pit of ray 0, which gives the
  // first tooth the same local geometry as all the others. Seen from a
  // viewpoint on the edge leaving p, every tooth hides the start of the pit
  // edge behind it while the climb to the next tooth is exposed again, so
  // the viewshed gains one interval per ray.
  std::vector<Vec2> pts;
  pts.reserve(n);
  Vec2 tooth{Rat(1), Rat(-3)}; // first tooth, angle about -71.6 degrees
  pts.push_back(rot_cw(tooth) * (b / lam)); // p: the virtual pit w_0
  for (int i = 1; i <= rays; ++i) {
    pts.push_back(tooth);
    if (i < rays) {
      pts.push_back(tooth * b);
      tooth = rot_ccw(tooth) * lam;
    }
  }
  Terrain1D terrain = validate_terrain1d(std::move(pts));

  // Ray i contributes the tooth at index 2i-1 and (except the last ray,
  // whose tooth is the right endpoint) the pit at index 2i. Every interior
  // tooth is convex with a sector about 1.5 ray steps wide, so consecutive
  // sectors overlap and sectors two rays apart are disjoint; every pit is
  // concave.
  for (int i = 1; i < rays; ++i)
    if (classify_vertex(terrain, 2 * i) != VertexClass::ConcaveInternal)
      throw std::logic_error("spiral teeth: pit is not concave");
  std::vector<AngularSector> secs;
  for (int i = 1; i < rays; ++i) {
    if (classify_vertex(terrain, 2 * i - 1) != VertexClass::ConvexInternal)
      throw std::logic_error("spiral teeth: tooth is not convex");
    secs.push_back(sector(terrain, 2 * i - 1));
  }
  for (size_t i = 0; i + 1 < secs.size(); ++i)
    if (!sectors_overlap(secs[i], secs[i + 1]))
      throw std::logic_error(
          "spiral teeth: adjacent tooth sectors do not overlap");
  for (size_t i = 0; i + 2 < secs.size(); ++i)
    if (sectors_overlap(secs[i], secs[i + 2]))
      throw std::logic_error(
          "spiral teeth: sectors two teeth apart are not disjoint");

  Rat f = viewpoint_frac ? *viewpoint_frac : rat(1) / (Rat(n) * Rat(n));
  if (sign(f) <= 0 || f >= 1)
    throw std::invalid_argument(
        "gen_spiral_teeth_1d: viewpoint fraction must lie in (0, 1)");
  const Vec2 vp = terrain.vertices[0] +
                  (terrain.vertices[1] - terrain.vertices[0]) * f;
  return {std::move(terrain), vp};
}

Terrain1D gen_element_distinctness_1d(const std::vector<long>& S) {
  if (S.empty())
    throw std::invalid_argument(
        "gen_element_distinctness_1d: S must be nonempty");
  for (long e : S)
    if (e <= 0)
      throw std::invalid_argument(
          "gen_element_distinctness_1d: elements must be positive integers");
  const int n = static_cast<int>(S.size());
  const long max_s = *std::max_element(S.begin(), S.end());
  const Rat scale = Rat(180) / Rat(max_s + 1);
  const Rat eps = Rat(18) / Rat(max_s + 1);

  // Per element: the sector [x' - eps, x' + eps] with x' = S_i * 180/(max+1)
  // degrees, realized exactly by unit neighbor offsets perpendicular to the
  // intended boundary directions.
  struct Block {
    Vec2 lo, hi;    // intended sector bounds (exact unit vectors)
    Vec2 l, v, r;   // left neighbor, convex vertex, right neighbor
  };
  std::vector<Block> blocks(n);
  Rat min_center, max_center;
  for (int i = 0; i < n; ++i) {
    const Rat center = Rat(S[i]) * scale;
    if (i == 0 || center < min_center) min_center = center;
    if (i == 0 || center > max_center) max_center = center;
    Block& bl = blocks[i];
    bl.lo = unit_direction_deg(center - eps);
    bl.hi = unit_direction_deg(center + eps);
    bl.v = {Rat(8) * (i + 1), Rat(0)};
    bl.l = bl.v + perp_ccw(bl.hi);              // angle(hi) + 90 degrees
    bl.r = bl.v + Vec2{bl.lo.y, -bl.lo.x};      // angle(lo) - 90 degrees
  }
  const Vec2 band_lo = unit_direction_deg(min_center - eps);
  const Vec2 band_hi = unit_direction_deg(max_center + eps);

  std::vector<Vec2> pts;
  pts.reserve(4 * n - 1);
  for (int i = 0; i < n; ++i) {
    const Block& bl = blocks[i];
    pts.push_back(bl.l);
    pts.push_back(bl.v);
    pts.push_back(bl.r);
    if (i + 1 == n) break;

    // Dummy peak between consecutive blocks, high enough that (a) both its
    // neighbors turn concave and (b) its sector covers the whole band;
    // twice the minimal height keeps every inequality strict.
    const Vec2& lnb = bl.r;             // dummy's left neighbor
    const Vec2& rnb = blocks[i + 1].l;  // dummy's right neighbor
    const Rat xu = bl.v.x + 4;
    Rat need;
    bool have = false;
    auto raise = [&](const Rat& h) {
      if (!have || h > need) need = h;
      have = true;
    };
    for (const Vec2* bdir : {&band_lo, &band_hi})
      for (const Vec2* nb : {&lnb, &rnb})
        raise(nb->y + bdir->x * (nb->x - xu) / bdir->y);
    {
      const Vec2 e = lnb - bl.v; // ascends left-to-right toward the dummy
      raise(lnb.y + e.y * (xu - lnb.x) / e.x);
    }
    {
      const Vec2 g = blocks[i + 1].v - rnb;
      raise(rnb.y - (rnb.x - xu) * g.y / g.x);
    }
    const Rat h = sign(need) > 0 ? Rat(need * 2) : Rat(1);
    pts.push_back({xu, h});
  }

  Terrain1D terrain = validate_terrain1d(std::move(pts));

  // The element vertex of block i sits at index 4i+1 and the dummy at 4i+3.
  for (int i = 0; i < n; ++i) {
    const int vi = 4 * i + 1;
    if (classify_vertex(terrain, vi) != VertexClass::ConvexInternal)
      throw std::logic_error("element terrain: element vertex is not convex");
    const AngularSector sec = sector(terrain, vi);
    if (!same_ray(sec.lo, blocks[i].lo) || !same_ray(sec.hi, blocks[i].hi))
      throw std::logic_error(
          "element terrain: sector does not match the prescribed bounds");
    if (i + 1 == n) continue;
    const int ui = 4 * i + 3;
    if (classify_vertex(terrain, ui) != VertexClass::ConvexInternal)
      throw std::logic_error("element terrain: dummy vertex is not convex");
    if (classify_vertex(terrain, ui - 1) != VertexClass::ConcaveInternal ||
        classify_vertex(terrain, ui + 1) != VertexClass::ConcaveInternal)
      throw std::logic_error(
          "element terrain: dummy neighbors are not concave");
    const AngularSector du = sector(terrain, ui);
    if (!sector_contains(du, band_lo) || !sector_contains(du, band_hi))
      throw std::logic_error(
          "element terrain: dummy sector does not cover the band");
  }
  return terrain;
}

ConeGadget gen_cone_gadget(const SphericalRectangle& rect) {
  for (int i = 0; i < 4; ++i)
    if (sign(rect.corners[i].z) <= 0)
      throw std::invalid_argument(
          "gen_cone_gadget: corner " + std::to_string(i) +
          " has nonpositive z");

  std::array<Vec3, 4> normals;
  for (int i = 0; i < 4; ++i) {
    normals[i] = cross(rect.corners[i], rect.corners[(i + 1) % 4]);
    if (is_zero(normals[i]))
      throw std::invalid_argument(
          "gen_cone_gadget: consecutive corners are parallel");
  }
  const int orient = sign(dot(normals[0], rect.corners[2]));
  if (orient == 0)
    throw std::invalid_argument(
        "gen_cone_gadget: corners are not in convex position");
  if (orient < 0)
    for (Vec3& nrm : normals) nrm = {-nrm.x, -nrm.y, -nrm.z};
  for (int i = 0; i < 4; ++i)
    for (int j : {(i + 2) % 4, (i + 3) % 4})
      if (sign(dot(normals[i], rect.corners[j])) <= 0)
        throw std::invalid_argument(
            "gen_cone_gadget: corners are not in convex position");

  // Neighbor offsets are the negated side-plane normals scaled to unit
  // max-norm, so the apex cone {d : offset . d <= 0 for all offsets} is
  // exactly {d : normal . d >= 0 for all side planes}.
  std::array<Vec3, 4> nb;
  for (int i = 0; i < 4; ++i) {
    Rat m = abs(normals[i].x);
    if (abs(normals[i].y) > m) m = abs(normals[i].y);
    if (abs(normals[i].z) > m) m = abs(normals[i].z);
    nb[i] = {-normals[i].x / m, -normals[i].y / m, -normals[i].z / m};
    if (sign(nb[i].x) == 0 && sign(nb[i].y) == 0)
      throw std::invalid_argument(
          "gen_cone_gadget: a side-plane normal is vertical; the wheel "
          "degenerates in projection");
  }

  // Sort the neighbors counterclockwise around the apex in projection.
  std::array<int, 4> order{0, 1, 2, 3};
  auto half = [&](int i) {
    const Vec2 q = project_xy(nb[i]);
    return (sign(q.y) < 0 || (sign(q.y) == 0 && sign(q.x) < 0)) ? 1 : 0;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (half(a) != half(b)) return half(a) < half(b);
    return sign(cross(project_xy(nb[a]), project_xy(nb[b]))) > 0;
  });
  for (int i = 0; i < 4; ++i) {
    const Vec2 qa = project_xy(nb[order[i]]);
    const Vec2 qb = project_xy(nb[order[(i + 1) % 4]]);
    if (sign(cross(qa, qb)) <= 0)
      throw std::invalid_argument(
          "gen_cone_gadget: projected neighbors do not surround the center");
  }

  std::vector<Vec3> verts;
  verts.push_back({Rat(0), Rat(0), Rat(0)});
  for (int i = 0; i < 4; ++i) verts.push_back(nb[order[i]]);
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < 4; ++i) tris.push_back({0, 1 + i, 1 + (i + 1) % 4});

  Terrain2D t = validate_terrain2d(std::move(verts), std::move(tris));
  if (t.classes[0] != VertexClass::ConvexInternal)
    throw std::logic_error("gen_cone_gadget: center vertex is not convex");
  return {std::move(t), 0};
}

namespace {

// Triangulates the strip between two x-sorted vertex rows (top row y above
// bottom row y, both with equal y within the row).
void zip_rows(const std::vector<int>& bottom, const std::vector<int>& top,
              std::vector<std::array<int, 3>>& tris,
              const std::vector<Vec3>& verts) {
  size_t i = 0, j = 0;
  while (i + 1 < bottom.size() || j + 1 < top.size()) {
    const bool can_b = i + 1 < bottom.size();
    const bool can_t = j + 1 < top.size();
    bool advance_bottom;
    if (!can_t)
      advance_bottom = true;
    else if (!can_b)
      advance_bottom = false;
    else
      advance_bottom = verts[bottom[i + 1]].x <= verts[top[j + 1]].x;
    if (advance_bottom) {
      tris.push_back({bottom[i], bottom[i + 1], top[j]});
      ++i;
    } else {
      tris.push_back({bottom[i], top[j + 1], top[j]});
      ++j;
    }
  }
}

} // namespace

Terrain2D gen_random(int n, unsigned long seed, const Rat& roughness) {
  if (n < 3)
    throw std::invalid_argument("gen_random: n must be at least 3");
  if (sign(roughness) < 0 || roughness > 1)
    throw std::invalid_argument("gen_random: roughness must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  // Modulo keeps the draw sequence identical across standard libraries.
  auto rint = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long long>(
                                            hi - lo + 1));
  };

  int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  if (g < 2) g = 2;
  std::vector<int> widths(n / g, g);
  if (n % g != 0) widths.push_back(n % g);
  const int rows = static_cast<int>(widths.size());

  struct Bump {
    long cx, cy, rad, amp;
  };
  std::vector<Bump> bumps(std::max(3, n / 40));
  for (Bump& bp : bumps) {
    bp.cx = rint(0, 8 * (g - 1));
    bp.cy = rint(0, 8 * (rows - 1));
    bp.rad = rint(3 * g, 6 * g);
    bp.amp = rint(bp.rad / 4 + 1, bp.rad / 2 + 1);
    if (rng() % 2 == 0) bp.amp = -bp.amp;
  }
  const long noise = floor_to_long(roughness * 8);

  std::vector<Vec3> verts;
  verts.reserve(n);
  std::vector<std::vector<int>> row_idx(rows);
  for (int r = 0; r < rows; ++r) {
    for (int col = 0; col < widths[r]; ++col) {
      const long x = 8 * col + rint(-1, 1);
      const long y = 8 * r; // exact row lines keep the strip zip convex
      long z = 0;
      for (const Bump& bp : bumps) {
        const long d2 =
            (x - bp.cx) * (x - bp.cx) + (y - bp.cy) * (y - bp.cy);
        const long q = bp.rad * bp.rad - d2;
        if (q > 0)
          z += static_cast<long>(static_cast<__int128>(bp.amp) * q / bp.rad *
                                 q / (bp.rad * bp.rad));
      }
      if (noise > 0) z += rint(-noise, noise);
      row_idx[r].push_back(static_cast<int>(verts.size()));
      verts.push_back({Rat(x), Rat(y), Rat(z)});
    }
  }

  std::vector<std::array<int, 3>> tris;
  for (int r = 0; r + 1 < rows; ++r)
    zip_rows(row_idx[r], row_idx[r + 1], tris, verts);
  return validate_terrain2d(std::move(verts), std::move(tris));
}

Terrain1D gen_random_1d(int n, unsigned long seed) {
  if (n < 2)
    throw std::invalid_argument("gen_random_1d: n must be at least 2");
  std::mt19937_64 rng(seed);
  auto rint = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long long>(
                                            hi - lo + 1));
  };
  struct Bump {
    long cx, rad, amp;
  };
  std::vector<Bump> bumps(std::max(2, n / 20));
  for (Bump& bp : bumps) {
    bp.cx = rint(0, 8 * (n - 1));
    bp.rad = rint(2 * n, 6 * n);
    bp.amp = rint(bp.rad / 4 + 1, bp.rad / 2 + 1);
    if (rng() % 2 == 0) bp.amp = -bp.amp;
  }
  std::vector<Vec2> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const long x = 8 * i + rint(-1, 1);
    long z = rint(-2, 2);
    for (const Bump& bp : bumps) {
      const long d2 = (x - bp.cx) * (x - bp.cx);
      const long q = bp.rad * bp.rad - d2;
      if (q > 0)
        z += static_cast<long>(static_cast<__int128>(bp.amp) * q / bp.rad * q /
                               (bp.rad * bp.rad));
    }
    pts.push_back({Rat(x), Rat(z)});
  }
  return validate_terrain1d(std::move(pts));
}

Terrain2D gen_grid(const std::vector<std::vector<Rat>>& heights,
                   DiagonalRule rule) {
  const int rows = static_cast<int>(heights.size());
  if (rows < 2)
    throw std::invalid_argument("gen_grid: need at least two rows");
  const int cols = static_cast<int>(heights[0].size());
  if (cols < 2)
    throw std::invalid_argument("gen_grid: need at least two columns");
  for (const auto& row : heights)
    if (static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("gen_grid: ragged height matrix");

  std::vector<Vec3> verts;
  verts.reserve(static_cast<size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      verts.push_back({Rat(c), Rat(r), heights[r][c]});

  std::vector<std::array<int, 3>> tris;
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c) {
      const int ll = r * cols + c;
      const int lr = ll + 1;
      const int ul = ll + cols;
      const int ur = ul + 1;
      if (rule == DiagonalRule::LowerLeftUpperRight) {
        tris.push_back({ll, lr, ur});
        tris.push_back({ll, ur, ul});
      } else {
        tris.push_back({lr, ur, ul});
        tris.push_back({lr, ul, ll});
      }
    }
  return validate_terrain2d(std::move(verts), std::move(tris));
}

namespace {

class ParamReader {
public:
  explicit ParamReader(const GeneratorSpec& spec) : spec_(spec) {}

  std::optional<std::string> raw_opt(const std::string& key) {
    used_.insert(key);
    auto it = spec_.params.find(key);
    if (it == spec_.params.end()) return std::nullopt;
    return it->second;
  }

  std::string raw(const std::string& key) {
    auto v = raw_opt(key);
    if (!v)
      throw std::invalid_argument("generate: family '" + spec_.family +
                                  "' needs parameter '" + key + "'");
    return *v;
  }

  Rat rational(const std::string& key) { return to_rat(key, raw(key)); }

  std::optional<Rat> rational_opt(const std::string& key) {
    auto v = raw_opt(key);
    if (!v) return std::nullopt;
    return to_rat(key, *v);
  }

  long integer(const std::string& key) { return to_long(key, raw(key)); }

  unsigned long uinteger(const std::string& key) {
    const long v = integer(key);
    if (v < 0)
      throw std::invalid_argument("generate: parameter '" + key +
                                  "' must be nonnegative");
    return static_cast<unsigned long>(v);
  }

  std::vector<Rat> rat_list(const std::string& key) {
    std::vector<Rat> out;
    for (const std::string& tok : split(raw(key)))
      out.push_back(to_rat(key, tok));
    return out;
  }

  std::vector<long> long_list(const std::string& key) {
    std::vector<long> out;
    for (const std::string& tok : split(raw(key)))
      out.push_back(to_long(key, tok));
    return out;
  }

  void finish() const {
    for (const auto& kv : spec_.params)
      if (used_.find(kv.first) == used_.end())
        throw std::invalid_argument("generate: family '" + spec_.family +
                                    "' does not take parameter '" + kv.first +
                                    "'");
  }

private:
  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
      const size_t comma = s.find(',', start);
      out.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

  Rat to_rat(const std::string& key, const std::string& tok) const {
    auto q = parse_rat(tok);
    if (!q)
      throw std::invalid_argument("generate: parameter '" + key +
                                  "' has malformed value '" + tok + "'");
    return *q;
  }

  long to_long(const std::string& key, const std::string& tok) const {
    const Rat q = to_rat(key, tok);
    if (q.get_den() != 1)
      throw std::invalid_argument("generate: parameter '" + key +
                                  "' must be an integer, got '" + tok + "'");
    auto v = as_int64(q);
    if (!v)
      throw std::invalid_argument("generate: parameter '" + key +
                                  "' is out of range");
    return static_cast<long>(*v);
  }

  const GeneratorSpec& spec_;
  std::set<std::string> used_;
};

} // namespace

GeneratedTerrain make_terrain(const GeneratorSpec& spec) {
  ParamReader pr(spec);
  GeneratedTerrain out;
  if (spec.family == "quadratic") {
    const long n = pr.integer("n");
    pr.finish();
    Gen2D g = gen_quadratic(static_cast<int>(n));
    out.t2 = std::move(g.terrain);
    out.viewpoint2 = g.viewpoint;
  } else if (spec.family == "boxed-mountains") {
    const long k = pr.integer("k");
    const long m = pr.integer("m");
    pr.finish();
    Gen2D g = gen_boxed_mountains_2d(static_cast<int>(k), static_cast<int>(m));
    out.t2 = std::move(g.terrain);
    out.viewpoint2 = g.viewpoint;
  } else if (spec.family == "spiral-teeth") {
    const long n = pr.integer("n");
    const std::optional<Rat> frac = pr.rational_opt("frac");
    pr.finish();
    Gen1D g = gen_spiral_teeth_1d(static_cast<int>(n), frac);
    out.t1 = std::move(g.terrain);
    out.viewpoint1 = g.viewpoint;
  } else if (spec.family == "element-distinctness") {
    const std::vector<long> s = pr.long_list("s");
    pr.finish();
    out.t1 = gen_element_distinctness_1d(s);
  } else if (spec.family == "cone-gadget") {
    SphericalRectangle rect;
    for (int i = 0; i < 4; ++i) {
      const std::vector<Rat> c = pr.rat_list("c" + std::to_string(i));
      if (c.size() != 3)
        throw std::invalid_argument(
            "generate: corner parameters take three comma-separated values");
      rect.corners[i] = {c[0], c[1], c[2]};
    }
    pr.finish();
    ConeGadget g = gen_cone_gadget(rect);
    out.t2 = std::move(g.terrain);
    out.viewpoint2 = viewpoint_at_vertex(*out.t2, g.center);
  } else if (spec.family == "random") {
    const long n = pr.integer("n");
    const unsigned long seed = pr.uinteger("seed");
    const std::optional<Rat> rough = pr.rational_opt("roughness");
    pr.finish();
    out.t2 = gen_random(static_cast<int>(n), seed, rough ? *rough : rat(1, 2));
  } else if (spec.family == "random-1d") {
    const long n = pr.integer("n");
    const unsigned long seed = pr.uinteger("seed");
    pr.finish();
    out.t1 = gen_random_1d(static_cast<int>(n), seed);
  } else if (spec.family == "grid") {
    const long rows = pr.integer("rows");
    const long cols = pr.integer("cols");
    const std::vector<Rat> flat = pr.rat_list("heights");
    const std::optional<std::string> diag = pr.raw_opt("diagonal");
    pr.finish();
    if (rows < 2 || cols < 2 ||
        static_cast<long>(flat.size()) != rows * cols)
      throw std::invalid_argument(
          "generate: grid needs rows*cols heights (row-major)");
    DiagonalRule rule = DiagonalRule::LowerLeftUpperRight;
    if (diag) {
      if (*diag == "lr-ul")
        rule = DiagonalRule::LowerRightUpperLeft;
      else if (*diag != "ll-ur")
        throw std::invalid_argument(
            "generate: diagonal must be 'll-ur' or 'lr-ul'");
    }
    std::vector<std::vector<Rat>> heights(rows, std::vector<Rat>(cols));
    for (long r = 0; r < rows; ++r)
      for (long c = 0; c < cols; ++c)
        heights[r][c] = flat[r * cols + c];
    out.t2 = gen_grid(heights, rule);
  } else {
    throw std::invalid_argument("generate: unknown family '" + spec.family +
                                "'");
  }
  return out;
}

} // namespace prickle
