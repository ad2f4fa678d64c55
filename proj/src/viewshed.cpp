#include "prickle/viewshed.hpp"

#include "prickle/predicates.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace prickle {

namespace {

// Applies fn to every index in [0, n) on a small thread pool; results land at
// their own index, so the output is independent of scheduling.
template <typename R, typename Fn>
std::vector<R> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<R> out(n);
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers = std::min<std::size_t>(n, hw ? hw : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n)
        return;
      try {
        out[i] = fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mutex);
        if (!err)
          err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back(body);
  for (std::thread& th : pool)
    th.join();
  if (err)
    std::rethrow_exception(err);
  return out;
}

bool lex_less3(const Vec3& a, const Vec3& b) {
  int c = cmp(a.x, b.x);
  if (c != 0)
    return c < 0;
  c = cmp(a.y, b.y);
  if (c != 0)
    return c < 0;
  return cmp(a.z, b.z) < 0;
}

} // namespace

Viewpoint viewpoint_at_vertex(const Terrain2D& t, int v) {
  if (v < 0 || static_cast<size_t>(v) >= t.vertices.size())
    throw std::invalid_argument("viewpoint vertex index out of range");
  return {t.vertices[v], v};
}

Viewpoint viewpoint_on_surface(const Terrain2D& t, const Vec2& xy) {
  const std::optional<Rat> z = surface_z_at(t, xy);
  if (!z)
    throw std::invalid_argument(
        "viewpoint lies outside the terrain's footprint");
  Viewpoint vp{{xy.x, xy.y, *z}, -1};
  for (size_t v = 0; v < t.vertices.size(); ++v)
    if (t.vertices[v] == vp.position) {
      vp.vertex = static_cast<int>(v);
      break;
    }
  return vp;
}

bool visible(const Terrain2D& t, const Vec3& p, const Vec3& q) {
  if (p == q)
    return true;
  const Vec2 pp = project_xy(p);
  const Vec2 pq = project_xy(q);
  const Rat slox = std::min(pp.x, pq.x), shix = std::max(pp.x, pq.x);
  const Rat sloy = std::min(pp.y, pq.y), shiy = std::max(pp.y, pq.y);
  const Rat sloz = std::min(p.z, q.z);

  for (size_t i = 0; i < t.triangles.size(); ++i) {
    const TriangleData& td = t.tri_data[i];
    if (td.lox > shix || td.hix < slox || td.loy > shiy || td.hiy < sloy)
      continue;
    if (sloz >= td.hiz) // segment never gets below the triangle's top height
      continue;

    // Parameter interval of the segment whose projection is inside the
    // projected triangle; each projected triangle edge clips it.
    Rat lo(0), hi(1);
    bool empty = false;
    const auto& tr = t.triangles[i];
    for (int j = 0; j < 3 && !empty; ++j) {
      const Vec2 a = project_xy(t.vertices[tr[j]]);
      const Vec2 b = project_xy(t.vertices[tr[(j + 1) % 3]]);
      const Rat f0 = cross(b - a, pp - a);
      const Rat f1 = cross(b - a, pq - a);
      const int s0 = sign(f0), s1 = sign(f1);
      if (s0 < 0 && s1 < 0) {
        empty = true;
      } else if (s0 < 0 || s1 < 0) {
        const Rat r = f0 / (f0 - f1);
        if (s0 < 0) {
          if (r > lo)
            lo = r;
        } else {
          if (r < hi)
            hi = r;
        }
        if (lo > hi)
          empty = true;
      }
    }
    if (empty)
      continue;

    // Height of segment minus surface is affine in the parameter, so its
    // minimum over the interval is at an endpoint.
    const Vec3& v0 = t.vertices[tr[0]];
    const Vec3& n = t.tri_data[i].normal;
    const Rat dp = dot(n, p - v0);
    const Rat dq = dot(n, q - v0);
    for (const Rat& tt : {lo, hi}) {
      const Rat h = (Rat(1) - tt) * dp + tt * dq;
      if (sign(h) < 0) {
        if (sign(tt) == 0)
          throw std::invalid_argument("visible: p is strictly below the surface");
        if (tt == Rat(1))
          throw std::invalid_argument("visible: q is strictly below the surface");
        return false;
      }
    }
  }
  return true;
}

// --- 1.5D ---------------------------------------------------------------

namespace {

void merge_into(std::vector<Interval1D>& out, std::vector<Interval1D> v) {
  out.insert(out.end(), v.begin(), v.end());
}

// Walks rightward from p over the given points (first point is p itself or
// the right end of p's edge), keeping the highest sight ray seen so far.
std::vector<Interval1D> walk_right(const Vec2& p, const std::vector<Vec2>& pts) {
  std::vector<Interval1D> out;
  std::optional<Vec2> w; // point carrying the current max sight slope
  Vec2 prev = p;
  for (const Vec2& b : pts) {
    if (!w) {
      out.push_back({prev.x, b.x});
    } else {
      const Vec2 wp = *w - p;
      const Rat ca = cross(wp, prev - p);
      const Rat cb = cross(wp, b - p);
      const int sa = sign(ca), sb = sign(cb);
      if (sa >= 0 && sb >= 0) {
        out.push_back({prev.x, b.x});
      } else if (sa >= 0 || sb >= 0) {
        const Rat r = ca / (ca - cb);
        const Rat cutx = prev.x + r * (b.x - prev.x);
        if (sa >= 0)
          out.push_back({prev.x, cutx});
        else
          out.push_back({cutx, b.x});
      }
    }
    if (!w || sign(cross(*w - p, b - p)) > 0)
      w = b;
    prev = b;
  }
  return out;
}

} // namespace

VisibleIntervals1D viewshed_1d(const Terrain1D& t, const Vec2& p) {
  const auto& vs = t.vertices;
  if (vs.empty() || p.x < vs.front().x || p.x > vs.back().x)
    throw std::invalid_argument("viewpoint is outside the terrain");
  size_t seg = 0; // edge (seg, seg+1) containing p.x
  while (seg + 2 < vs.size() && vs[seg + 1].x <= p.x)
    ++seg;
  {
    const bool on_edge =
        sign(cross(vs[seg + 1] - vs[seg], p - vs[seg])) == 0 &&
        p.x >= vs[seg].x && p.x <= vs[seg + 1].x;
    if (!on_edge && !(p == vs[seg]) && !(p == vs[seg + 1]))
      throw std::invalid_argument("viewpoint is not on the terrain surface");
  }

  std::vector<Interval1D> raw;
  raw.push_back({p.x, p.x});

  std::vector<Vec2> right;
  for (size_t i = seg; i < vs.size(); ++i)
    if (vs[i].x > p.x)
      right.push_back(vs[i]);
  merge_into(raw, walk_right(p, right));

  // Mirror x to reuse the rightward walk for the left side.
  std::vector<Vec2> left;
  for (size_t i = seg + 1; i-- > 0;)
    if (vs[i].x < p.x)
      left.push_back({-vs[i].x, vs[i].y});
  auto mirrored = walk_right({-p.x, p.y}, left);
  for (Interval1D& iv : mirrored)
    raw.push_back({-iv.hi, -iv.lo});

  std::sort(raw.begin(), raw.end(),
            [](const Interval1D& a, const Interval1D& b) {
              const int c = cmp(a.lo, b.lo);
              return c != 0 ? c < 0 : cmp(a.hi, b.hi) < 0;
            });
  VisibleIntervals1D res;
  for (const Interval1D& iv : raw) {
    if (!res.intervals.empty() && iv.lo <= res.intervals.back().hi) {
      if (iv.hi > res.intervals.back().hi)
        res.intervals.back().hi = iv.hi;
    } else {
      res.intervals.push_back(iv);
    }
  }
  return res;
}

// --- 2.5D ---------------------------------------------------------------

namespace {

// Shadow sheet of an edge: the part of the plane through the eye and the edge
// that lies on or beyond the edge as seen from the eye, bounded by the two
// rays from the edge endpoints away from the eye.
struct Vase {
  bool ok = false;
  Vec3 a, b; // edge endpoints relative to the eye
  Vec3 n;    // cross(a, b)
  Rat nn;    // dot(n, n)
};

std::vector<Vase> make_vases(const Terrain2D& t, const Vec3& eye) {
  std::vector<Vase> vases(t.edges.size());
  for (size_t e = 0; e < t.edges.size(); ++e) {
    Vase& v = vases[e];
    v.a = t.vertices[t.edges[e].first] - eye;
    v.b = t.vertices[t.edges[e].second] - eye;
    v.n = cross(v.a, v.b);
    v.ok = !is_zero(v.n);
    if (v.ok)
      v.nn = dot(v.n, v.n);
  }
  return vases;
}

// y is relative to the eye. Membership uses coordinates y = alpha*a + beta*b
// scaled by nn, so no divisions are needed.
bool in_vase(const Vase& v, const Vec3& y) {
  const Rat alpha = dot(cross(y, v.b), v.n);
  if (sign(alpha) < 0)
    return false;
  const Rat beta = dot(cross(v.a, y), v.n);
  if (sign(beta) < 0)
    return false;
  return alpha + beta >= v.nn;
}

struct EdgeCells {
  long parts = 1;
  long transitions = 0;
};

EdgeCells edge_cells(const Terrain2D& t, const Vec3& eye,
                     const std::vector<Vase>& vases, size_t e2) {
  const Vec3& A = t.vertices[t.edges[e2].first];
  const Vec3& B = t.vertices[t.edges[e2].second];

  std::vector<Rat> taus;
  for (size_t e1 = 0; e1 < vases.size(); ++e1) {
    if (e1 == e2 || !vases[e1].ok)
      continue;
    const Vase& v = vases[e1];
    const Rat da = dot(v.n, A - eye);
    const Rat db = dot(v.n, B - eye);
    if (sign(da) * sign(db) >= 0) // only strict interior crossings
      continue;
    const Rat tau = da / (da - db);
    const Vec3 y = (A + (B - A) * tau) - eye;
    if (in_vase(v, y))
      taus.push_back(tau);
  }
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  EdgeCells res;
  res.parts = 0;
  int prev = -1;
  Rat lo(0);
  for (size_t c = 0; c <= taus.size(); ++c) {
    const Rat hi = c < taus.size() ? taus[c] : Rat(1);
    const Rat mid = (lo + hi) / 2;
    const bool vis = visible(t, eye, A + (B - A) * mid);
    if (prev == -1 || (prev == 1) != vis)
      ++res.parts;
    if (prev != -1 && (prev == 1) != vis)
      ++res.transitions;
    prev = vis ? 1 : 0;
    lo = hi;
  }
  return res;
}

// Intersection of the ray origin + s*dir with the line through u along e,
// all coplanar. Returns (s, tau) or nothing when parallel.
std::optional<std::pair<Rat, Rat>> ray_line_params(const Vec3& origin,
                                                   const Vec3& dir,
                                                   const Vec3& u,
                                                   const Vec3& e) {
  const Vec3 m = cross(dir, e);
  const Rat mm = dot(m, m);
  if (sign(mm) == 0)
    return std::nullopt;
  const Vec3 up = u - origin;
  const Rat s = dot(cross(up, e), m) / mm;
  const Rat tau = dot(cross(up, dir), m) / mm;
  return std::make_pair(s, tau);
}

// 2D prefilter: can the ray from E along D meet the projected bounding box?
bool ray_may_hit_bbox(const Vec2& E, const Vec2& D, const TriangleData& td) {
  const int sx = sign(D.x), sy = sign(D.y);
  if (sx > 0 ? td.hix < E.x : sx < 0 ? td.lox > E.x
                                     : (td.hix < E.x || td.lox > E.x))
    return false;
  if (sy > 0 ? td.hiy < E.y : sy < 0 ? td.loy > E.y
                                     : (td.hiy < E.y || td.loy > E.y))
    return false;
  if (sx == 0 && sy == 0)
    return true;
  // All four corners strictly on one side of the ray's line -> miss.
  int pos = 0, neg = 0;
  for (int cx = 0; cx < 2; ++cx)
    for (int cy = 0; cy < 2; ++cy) {
      const Vec2 corner{cx ? td.hix : td.lox, cy ? td.hiy : td.loy};
      const int s = sign(cross(D, corner - E));
      pos += s > 0;
      neg += s < 0;
    }
  return pos < 4 && neg < 4;
}

} // namespace

ViewshedStats viewshed_vertices_2d(const Terrain2D& t, const Viewpoint& p,
                                   const Rat& height_offset) {
  if (sign(height_offset) < 0)
    throw std::invalid_argument("viewpoint height offset must be nonnegative");
  const Vec2 foot = project_xy(p.position);
  if (surface_z_at(t, foot) != p.position.z)
    throw std::invalid_argument("viewpoint is not on the terrain surface");
  const Vec3 eye{p.position.x, p.position.y, p.position.z + height_offset};

  ViewshedStats stats;

  const auto vis_flags = parallel_map<char>(
      t.vertices.size(),
      [&](size_t v) { return visible(t, eye, t.vertices[v]) ? 1 : 0; });
  for (char f : vis_flags)
    stats.type1 += f;

  const std::vector<Vase> vases = make_vases(t, eye);

  const auto cells = parallel_map<EdgeCells>(
      t.edges.size(),
      [&](size_t e) { return edge_cells(t, eye, vases, e); });
  stats.edge_part_counts.reserve(cells.size());
  for (const EdgeCells& c : cells) {
    stats.edge_part_counts.push_back(c.parts);
    stats.type2 += c.transitions;
  }

  // Type 3: for each pair of sheets, the ray where their planes meet, taken
  // where it passes beyond both edges, intersected with the surface.
  const auto per_e1 = parallel_map<std::vector<Vec3>>(
      t.edges.size(), [&](size_t e1) {
        std::vector<Vec3> cands;
        if (!vases[e1].ok)
          return cands;
        const Vec3 u1 = t.vertices[t.edges[e1].first];
        const Vec3 ev1 = t.vertices[t.edges[e1].second] - u1;
        for (size_t e2 = e1 + 1; e2 < t.edges.size(); ++e2) {
          if (!vases[e2].ok)
            continue;
          const Vec3 w = cross(vases[e1].n, vases[e2].n);
          if (is_zero(w))
            continue;
          const Vec3 u2 = t.vertices[t.edges[e2].first];
          const Vec3 ev2 = t.vertices[t.edges[e2].second] - u2;
          for (int sgn = 0; sgn < 2; ++sgn) {
            const Vec3 dir = sgn ? Vec3{-w.x, -w.y, -w.z} : w;
            const auto c1 = ray_line_params(eye, dir, u1, ev1);
            if (!c1 || sign(c1->first) <= 0 || sign(c1->second) < 0 ||
                c1->second > Rat(1))
              continue;
            const auto c2 = ray_line_params(eye, dir, u2, ev2);
            if (!c2 || sign(c2->first) <= 0 || sign(c2->second) < 0 ||
                c2->second > Rat(1))
              continue;
            const Rat s_min = std::max(c1->first, c2->first);

            std::vector<std::pair<Rat, bool>> hits;
            const Vec2 E = project_xy(eye);
            const Vec2 D = project_xy(dir);
            for (size_t i = 0; i < t.triangles.size(); ++i) {
              if (!ray_may_hit_bbox(E, D, t.tri_data[i]))
                continue;
              const auto& tr = t.triangles[i];
              const auto hit = ray_triangle_intersect(
                  eye, dir, t.vertices[tr[0]], t.vertices[tr[1]],
                  t.vertices[tr[2]]);
              if (hit && hit->t >= s_min)
                hits.emplace_back(hit->t, hit->on_boundary);
            }
            std::sort(hits.begin(), hits.end(),
                      [](const auto& a, const auto& b) {
                        return a.first < b.first;
                      });
            for (const auto& [s, on_bd] : hits) {
              const Vec3 x = eye + dir * s;
              if (!visible(t, eye, x))
                break; // later hits only get more occluded
              if (!on_bd)
                cands.push_back(x);
            }
          }
        }
        return cands;
      });

  std::vector<Vec3> type3;
  for (const auto& v : per_e1)
    type3.insert(type3.end(), v.begin(), v.end());
  std::sort(type3.begin(), type3.end(), lex_less3);
  type3.erase(std::unique(type3.begin(), type3.end()), type3.end());
  stats.type3 = static_cast<long>(type3.size());

  stats.total = stats.type1 + stats.type2 + stats.type3;
  return stats;
}

long edge_parts(const Terrain2D& t, const Viewpoint& p, int e,
                const Rat& height_offset) {
  if (e < 0 || static_cast<size_t>(e) >= t.edges.size())
    throw std::invalid_argument("edge index out of range");
  if (sign(height_offset) < 0)
    throw std::invalid_argument("viewpoint height offset must be nonnegative");
  const Vec3 eye{p.position.x, p.position.y, p.position.z + height_offset};
  const std::vector<Vase> vases = make_vases(t, eye);
  return edge_cells(t, eye, vases, static_cast<size_t>(e)).parts;
}

std::vector<Viewpoint>
select_viewpoints(const Terrain2D& t, int k,
                  const std::optional<Rat>& min_separation_sq) {
  if (k < 1)
    throw std::invalid_argument("viewpoint count must be >= 1");
  Rat sep2;
  if (min_separation_sq) {
    sep2 = *min_separation_sq;
  } else {
    Rat lox = t.vertices[0].x, hix = lox;
    Rat loy = t.vertices[0].y, hiy = loy;
    for (const Vec3& v : t.vertices) {
      if (v.x < lox) lox = v.x;
      if (v.x > hix) hix = v.x;
      if (v.y < loy) loy = v.y;
      if (v.y > hiy) hiy = v.y;
    }
    const Rat w = hix - lox, h = hiy - loy;
    sep2 = (w * w + h * h) / 36;
  }

  std::vector<int> order(t.vertices.size());
  for (size_t i = 0; i < order.size(); ++i)
    order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int c = cmp(t.vertices[a].z, t.vertices[b].z);
    return c != 0 ? c > 0 : a < b;
  });

  std::vector<Viewpoint> out;
  for (int idx : order) {
    if (static_cast<int>(out.size()) == k)
      break;
    bool far_enough = true;
    for (const Viewpoint& vp : out) {
      const Rat dx = t.vertices[idx].x - vp.position.x;
      const Rat dy = t.vertices[idx].y - vp.position.y;
      if (dx * dx + dy * dy < sep2) {
        far_enough = false;
        break;
      }
    }
    if (far_enough)
      out.push_back({t.vertices[idx], idx});
  }
  return out;
}

} // namespace prickle
