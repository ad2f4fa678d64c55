#include "prickle/sectors.hpp"

#include <algorithm>
#include <stdexcept>

namespace prickle {

bool sector_contains(const AngularSector& s, const Vec2& dir) {
  if (s.empty) return false;
  Rat c1 = cross(s.lo, dir);
  if (sgn(c1) < 0) return false;
  Rat c2 = cross(dir, s.hi);
  if (sgn(c2) < 0) return false;
  if (sgn(c1) == 0 && sgn(dot(s.lo, dir)) <= 0) return false;
  if (sgn(c2) == 0 && sgn(dot(s.hi, dir)) <= 0) return false;
  return true;
}

AngularSector sector(const Terrain1D& t, int v) {
  if (v <= 0 || v + 1 >= static_cast<int>(t.vertices.size()))
    throw std::invalid_argument("sector of a boundary vertex");
  const Vec2& l = t.vertices[v - 1];
  const Vec2& p = t.vertices[v];
  const Vec2& r = t.vertices[v + 1];

  AngularSector s;
  s.owner = v;
  int turn = orient2d(l, p, r);
  if (turn > 0) return s; // concave: empty

  if (turn == 0) {
    // Straight vertex: the raw local-max set is a perpendicular direction
    // pair; the upper one survives the half-circle clip.
    Vec2 up = perp_ccw(r - p); // r.x > p.x, so y-component positive
    s.empty = false;
    s.lo = up;
    s.hi = up;
    return s;
  }

  // Convex: wedge {w : dot(w, l-p) <= 0 and dot(w, r-p) <= 0}, positive width,
  // strictly above the horizon.
  Vec2 nl = l - p, nr = r - p;
  Vec2 b1 = perp_ccw(nl);
  if (sgn(dot(b1, nr)) > 0) b1 = Vec2{-b1.x, -b1.y};
  Vec2 b2 = perp_ccw(nr);
  if (sgn(dot(b2, nl)) > 0) b2 = Vec2{-b2.x, -b2.y};
  s.empty = false;
  if (sgn(cross(b1, b2)) > 0) {
    s.lo = b1;
    s.hi = b2;
  } else {
    s.lo = b2;
    s.hi = b1;
  }
  return s;
}

namespace {

std::vector<AngularSector> convex_sectors(const Terrain1D& t) {
  std::vector<AngularSector> out;
  for (int v = 1; v + 1 < static_cast<int>(t.vertices.size()); ++v)
    if (classify_vertex(t, v) == VertexClass::ConvexInternal)
      out.push_back(sector(t, v));
  return out;
}

Prickliness1DResult assemble(const std::vector<AngularSector>& sectors,
                             long best, const Vec2& witness) {
  Prickliness1DResult r;
  r.value = best;
  r.witness = witness;
  for (const AngularSector& s : sectors)
    if (sector_contains(s, r.witness)) r.contributors.push_back(s.owner);
  std::sort(r.contributors.begin(), r.contributors.end());
  return r;
}

} // namespace

Prickliness1DResult sweep_sectors(const std::vector<AngularSector>& sectors) {
  struct Event {
    Vec2 dir;
    int type; // 0 = start, 1 = end
    int owner;
  };
  std::vector<Event> events;
  for (const AngularSector& s : sectors) {
    if (s.empty) continue;
    events.push_back({s.lo, 0, s.owner});
    events.push_back({s.hi, 1, s.owner});
  }
  if (events.empty()) return {};

  // All event directions lie in the open upper half-plane, where the
  // counterclockwise order from (1,0) is total.
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    int c = sgn(cross(a.dir, b.dir));
    if (c != 0) return c > 0;
    if (a.type != b.type) return a.type < b.type; // starts before ends
    return a.owner < b.owner;
  });

  long depth = 0, best = 0;
  Vec2 witness = events.front().dir;
  for (const Event& e : events) {
    if (e.type == 0) {
      if (++depth > best) {
        best = depth;
        witness = e.dir;
      }
    } else {
      --depth;
    }
  }
  return assemble(sectors, best, witness);
}

Prickliness1DResult prickliness_1d(const Terrain1D& t) {
  return sweep_sectors(convex_sectors(t));
}

Prickliness1DResult brute_force_1d(const Terrain1D& t) {
  std::vector<AngularSector> sectors = convex_sectors(t);
  if (sectors.empty()) return {};

  long best = 0;
  Vec2 witness = sectors.front().lo;
  for (const AngularSector& s : sectors) {
    for (const Vec2* cand : {&s.lo, &s.hi}) {
      long depth = 0;
      for (const AngularSector& o : sectors)
        if (sector_contains(o, *cand)) ++depth;
      if (depth > best) {
        best = depth;
        witness = *cand;
      }
    }
  }
  return assemble(sectors, best, witness);
}

} // namespace prickle
