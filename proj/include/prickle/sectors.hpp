#pragma once

#include "prickle/terrain.hpp"

#include <vector>

namespace prickle {

// Closed angular sector on the unit circle: the directions in which the owner
// vertex is a local maximum, clipped to the closed upper half-circle. Stored
// as exact boundary direction vectors (positive multiples, not normalized),
// counterclockwise from lo to hi, width < 180 degrees. lo == hi encodes a
// single-direction sector (a straight vertex's outward normal). For a convex
// vertex the sector has positive width and lies strictly above the horizon;
// for a concave vertex it is empty.
struct AngularSector {
  bool empty = true;
  Vec2 lo, hi;
  int owner = -1;
};

bool sector_contains(const AngularSector& s, const Vec2& dir);

// Sector of directions in which internal vertex v is a local maximum.
// Throws std::invalid_argument for a boundary (endpoint) vertex.
AngularSector sector(const Terrain1D& t, int v);

struct Prickliness1DResult {
  long value = 0;
  Vec2 witness{Rat(0), Rat(1)}; // direction achieving the value
  std::vector<int> contributors; // convex vertices that are maxima at witness
};

// Maximum over directions of the number of internal convex local maxima,
// via a rotational sweep over sector endpoints (closed-set semantics:
// coincident sector starts are processed before ends). O(n log n).
Prickliness1DResult prickliness_1d(const Terrain1D& t);

// Same value by evaluating the overlap depth at every sector endpoint. O(n^2).
Prickliness1DResult brute_force_1d(const Terrain1D& t);

// Sweep over an explicit sector list (exposed for tests; prickliness_1d feeds
// it the sectors of the convex internal vertices).
Prickliness1DResult sweep_sectors(const std::vector<AngularSector>& sectors);

} // namespace prickle
