#pragma once

// Shared fixtures, samplers, and independent re-implementations used as
// oracles by the unit tests and the acceptance checks. Everything here is
// deliberately written from first principles (Cramer solves, sampled
// definitions) rather than by calling the code under test.

#include "prickle/generators.hpp"
#include "prickle/predicates.hpp"
#include "prickle/sectors.hpp"
#include "prickle/terrain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

namespace testutil {

using namespace prickle;

// ---------------------------------------------------------------------------
// Tiny hand-made terrains
// ---------------------------------------------------------------------------

// Square-based pyramid: four boundary corners, one apex.
inline Terrain2D pyramid() {
  std::vector<Vec3> v = {{rat(1), rat(1), rat(0)},
                         {rat(-1), rat(1), rat(0)},
                         {rat(-1), rat(-1), rat(0)},
                         {rat(1), rat(-1), rat(0)},
                         {rat(0), rat(0), rat(1)}};
  std::vector<std::array<int, 3>> tr = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  return validate_terrain2d(std::move(v), std::move(tr));
}

// Same square with the center pushed below the rim.
inline Terrain2D bowl() {
  std::vector<Vec3> v = {{rat(1), rat(1), rat(1)},
                         {rat(-1), rat(1), rat(1)},
                         {rat(-1), rat(-1), rat(1)},
                         {rat(1), rat(-1), rat(1)},
                         {rat(0), rat(0), rat(0)}};
  std::vector<std::array<int, 3>> tr = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  return validate_terrain2d(std::move(v), std::move(tr));
}

inline std::vector<std::vector<Rat>> zero_heights(int rows, int cols) {
  return std::vector<std::vector<Rat>>(rows, std::vector<Rat>(cols, rat(0)));
}

// 3x5 grid with two equal interior peaks.
inline Terrain2D two_peaks() {
  auto h = zero_heights(3, 5);
  h[1][1] = rat(3);
  h[1][3] = rat(3);
  return gen_grid(h);
}

// Planar but tilted: z = x, so no vertex is convex or concave.
inline Terrain2D tilted_plane() {
  auto h = zero_heights(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      h[r][c] = rat(c);
  return gen_grid(h);
}

// 3x3 grid whose middle row is a tall wall.
inline Terrain2D ridge() {
  auto h = zero_heights(3, 3);
  for (int c = 0; c < 3; ++c)
    h[1][c] = rat(5);
  return gen_grid(h);
}

// A flat stage with a tall front vertex and an isolated tetrahedral spike
// between it and the long back edge. Seen from the front vertex, the back
// edge is visible near both ends and hidden in the middle, and the spike's
// own back base vertex hides behind the spike.
inline Terrain2D spike_stage() {
  std::vector<Vec3> v = {{rat(0), rat(0), rat(4)},   // 0: front viewpoint
                         {rat(-8), rat(0), rat(0)},  // 1
                         {rat(8), rat(0), rat(0)},   // 2
                         {rat(-1), rat(3), rat(0)},  // 3: spike base, front left
                         {rat(1), rat(3), rat(0)},   // 4: spike base, front right
                         {rat(0), rat(5), rat(0)},   // 5: spike base, back
                         {rat(0), rat(4), rat(3)},   // 6: spike apex
                         {rat(-8), rat(8), rat(0)},  // 7
                         {rat(8), rat(8), rat(0)}};  // 8
  std::vector<std::array<int, 3>> tr = {
      {1, 0, 3}, {0, 2, 4}, {0, 4, 3}, {1, 3, 7}, {3, 5, 7}, {4, 2, 8},
      {4, 8, 5}, {5, 8, 7}, {3, 4, 6}, {4, 5, 6}, {5, 3, 6}};
  return validate_terrain2d(std::move(v), std::move(tr));
}

// Simple 1.5D fixtures.
inline Terrain1D peak_1d() {
  return validate_terrain1d({{rat(-1), rat(0)}, {rat(0), rat(1)}, {rat(1), rat(0)}});
}

inline Terrain1D valley_1d() {
  return validate_terrain1d({{rat(-1), rat(1)}, {rat(0), rat(0)}, {rat(1), rat(1)}});
}

// ---------------------------------------------------------------------------
// Random sampling helpers (all deterministic via the caller's engine)
// ---------------------------------------------------------------------------

inline long rand_long(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Vec3 rand_int_vec3(std::mt19937_64& rng, long lo, long hi) {
  return {rat(rand_long(rng, lo, hi)), rat(rand_long(rng, lo, hi)),
          rat(rand_long(rng, lo, hi))};
}

// Exactly unit-length rational direction with z > 0: the inverse
// stereographic image of a random rational point in the open unit disk.
inline Vec3 random_unit_upper_direction(std::mt19937_64& rng) {
  for (;;) {
    Rat a = rat(rand_long(rng, -99, 99), 100);
    Rat b = rat(rand_long(rng, -99, 99), 100);
    Rat s = a * a + b * b;
    if (s >= 1) continue;
    Rat n = rat(1) + s;
    return {rat(2) * a / n, rat(2) * b / n, (rat(1) - s) / n};
  }
}

// Arbitrary small-integer direction with z >= 0 (not normalized).
inline Vec3 random_upper_direction(std::mt19937_64& rng) {
  for (;;) {
    Vec3 d{rat(rand_long(rng, -20, 20)), rat(rand_long(rng, -20, 20)),
           rat(rand_long(rng, 0, 20))};
    if (!is_zero(d)) return d;
  }
}

// ---------------------------------------------------------------------------
// Exact 3x3 rational matrices and rotations
// ---------------------------------------------------------------------------

using Mat3 = std::array<std::array<Rat, 3>, 3>;

inline Mat3 identity3() {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[i][j] = rat(i == j ? 1 : 0);
  return m;
}

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rat s = rat(0);
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      m[i][j] = s;
    }
  return m;
}

inline Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  auto row = [&](int i) -> Rat {
    return m[i][0] * v.x + m[i][1] * v.y + m[i][2] * v.z;
  };
  return {row(0), row(1), row(2)};
}

// Householder reflection through the plane orthogonal to u.
inline Mat3 householder(const Vec3& u) {
  Rat uu = dot(u, u);
  std::array<Rat, 3> c = {u.x, u.y, u.z};
  Mat3 m = identity3();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[i][j] -= rat(2) * c[i] * c[j] / uu;
  return m;
}

// Exact rational rotation taking the unit vector d to (0,0,1): a reflection
// swapping d and the vertical composed with a reflection fixing the vertical
// (so the determinant is +1).
inline Mat3 rotation_to_vertical(const Vec3& d) {
  Vec3 up{rat(0), rat(0), rat(1)};
  Vec3 u = d - up;
  Mat3 flip_x = identity3();
  flip_x[0][0] = rat(-1);
  if (is_zero(u)) return identity3();
  return mat_mul(flip_x, householder(u));
}

// ---------------------------------------------------------------------------
// Independent ray/triangle oracle (Cramer's rule on the barycentric system)
// ---------------------------------------------------------------------------

struct RayOracle {
  enum Kind { Parallel, Miss, Hit } kind;
  Rat t;
  bool boundary = false;
};

inline Rat triple(const Vec3& a, const Vec3& b, const Vec3& c) {
  return dot(cross(a, b), c);
}

inline RayOracle ray_oracle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                            const Vec3& b, const Vec3& c) {
  // Solve a + u*(b-a) + v*(c-a) = origin + t*dir.
  Vec3 e1 = b - a, e2 = c - a, w = origin - a;
  Vec3 md{-dir.x, -dir.y, -dir.z};
  Rat det = triple(e1, e2, md);
  if (sign(det) == 0) return {RayOracle::Parallel, rat(0), false};
  Rat u = triple(w, e2, md) / det;
  Rat v = triple(e1, w, md) / det;
  Rat t = triple(e1, e2, w) / det;
  if (sign(u) < 0 || sign(v) < 0 || u + v > 1 || sign(t) < 0)
    return {RayOracle::Miss, rat(0), false};
  bool bd = sign(u) == 0 || sign(v) == 0 || u + v == 1;
  return {RayOracle::Hit, t, bd};
}

// ---------------------------------------------------------------------------
// Sampled-definition oracle for 1.5D angular sectors
// ---------------------------------------------------------------------------

// For a convex internal vertex the sector must contain exactly the directions
// in which the vertex is a local maximum (that set lies strictly above the
// horizon, so nothing is clipped away). Other interior vertices never count
// toward prickliness, and their sectors drop exactly the raw local-maximum
// directions that point at or below the horizon: a concave vertex's whole
// wedge, and the downward ray of a straight vertex. Checks the contract on
// `samples` exact directions around the circle.
inline bool sector_matches_sampled_definition(const Terrain1D& t, int v,
                                              int samples = 360) {
  const AngularSector s = sector(t, v);
  const bool convex = classify_vertex(t, v) == VertexClass::ConvexInternal;
  for (int k = 0; k < samples; ++k) {
    Vec2 d = unit_direction_deg(rat(360 * k, samples));
    const bool raw = is_local_max(t, v, d);
    const bool in_sector = sector_contains(s, d);
    if (convex) {
      if (in_sector != raw) return false;
    } else {
      if (in_sector && !raw) return false;
      if (raw && !in_sector && sgn(d.y) > 0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Statistics helpers
// ---------------------------------------------------------------------------

inline std::vector<double> average_ranks(const std::vector<double>& xs) {
  const size_t n = xs.size();
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double spearman_rho(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  auto rx = average_ranks(xs), ry = average_ranks(ys);
  const size_t n = xs.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Least-squares slope of ln(y) against ln(x).
inline double loglog_slope(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  const size_t n = xs.size();
  double mx = 0, my = 0;
  std::vector<double> lx(n), ly(n);
  for (size_t i = 0; i < n; ++i) {
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Filesystem scratch space
// ---------------------------------------------------------------------------

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0;; ++i) {
      auto cand = base / (tag + "_" + std::to_string(::getpid()) + "_" +
                          std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directory(cand, ec)) {
        path = cand;
        return;
      }
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

} // namespace testutil
