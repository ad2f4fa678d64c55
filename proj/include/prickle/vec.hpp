#pragma once

#include "prickle/rational.hpp"

#include <array>
#include <stdexcept>

namespace prickle {

struct Vec2 {
  Rat x, y;
  Vec2() = default;
  Vec2(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)) {}
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(const Rat& s) const { return {x * s, y * s}; }
};

inline Rat dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Rat cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Vec2 perp_ccw(const Vec2& v) { return {-v.y, v.x}; }
inline bool is_zero(const Vec2& v) { return sgn(v.x) == 0 && sgn(v.y) == 0; }

struct Vec3 {
  Rat x, y, z;
  Vec3() = default;
  Vec3(Rat x_, Rat y_, Rat z_)
      : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
  bool operator==(const Vec3& o) const {
    return x == o.x && y == o.y && z == o.z;
  }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(const Rat& s) const { return {x * s, y * s, z * s}; }
};

inline Rat dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline bool is_zero(const Vec3& v) {
  return sgn(v.x) == 0 && sgn(v.y) == 0 && sgn(v.z) == 0;
}
inline Vec2 project_xy(const Vec3& v) { return {v.x, v.y}; }

// Direction in 3-space, canonicalized so the largest-absolute component equals
// one. Canonicalization scales by a positive factor only, so antipodal
// directions stay distinct and equality is exact componentwise equality.
struct Direction3 {
  Vec3 v;

  static Direction3 from(const Vec3& w) {
    if (is_zero(w)) throw std::invalid_argument("zero direction");
    Rat m = abs(w.x);
    if (abs(w.y) > m) m = abs(w.y);
    if (abs(w.z) > m) m = abs(w.z);
    return Direction3{{w.x / m, w.y / m, w.z / m}};
  }

  bool operator==(const Direction3& o) const { return v == o.v; }
};

} // namespace prickle
