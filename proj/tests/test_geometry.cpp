#include "doctest.h"

#include "prickle/linear_feasibility.hpp"
#include "prickle/predicates.hpp"

#include "oracles.hpp"

#include <random>

using namespace prickle;
using namespace testutil;

TEST_SUITE("orientation predicates") {
  TEST_CASE("orient3d on the standard basis tetrahedron") {
    Vec3 a{rat(0), rat(0), rat(0)}, b{rat(1), rat(0), rat(0)},
        c{rat(0), rat(1), rat(0)}, d{rat(0), rat(0), rat(1)};
    CHECK(orient3d(a, b, c, d) == 1);
    CHECK(orient3d(a, c, b, d) == -1); // mirrored
    CHECK(orient3d(a, b, c, Vec3{rat(2), rat(-1), rat(0)}) == 0); // coplanar
  }

  TEST_CASE("orient3d is antisymmetric under swapping two arguments") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 200; ++i) {
      Vec3 a = rand_int_vec3(rng, -9, 9), b = rand_int_vec3(rng, -9, 9),
           c = rand_int_vec3(rng, -9, 9), d = rand_int_vec3(rng, -9, 9);
      CHECK(orient3d(a, b, c, d) == -orient3d(b, a, c, d));
      CHECK(orient3d(a, b, c, d) == -orient3d(a, c, b, d));
    }
  }

  TEST_CASE("orient2d turn signs") {
    Vec2 a{rat(0), rat(0)}, b{rat(2), rat(0)};
    CHECK(orient2d(a, b, Vec2{rat(1), rat(1)}) == 1);
    CHECK(orient2d(a, b, Vec2{rat(1), rat(-1)}) == -1);
    CHECK(orient2d(a, b, Vec2{rat(7), rat(0)}) == 0);
  }
}

TEST_SUITE("plane pair directions") {
  TEST_CASE("two coordinate planes meet in the remaining axis") {
    auto d = plane_pair_direction(Vec3{rat(0), rat(0), rat(1)},
                                  Vec3{rat(1), rat(0), rat(0)});
    REQUIRE(d.has_value());
    CHECK(d->v == Vec3{rat(0), rat(1), rat(0)});
  }

  TEST_CASE("parallel planes have no intersection direction") {
    CHECK_FALSE(plane_pair_direction(Vec3{rat(0), rat(0), rat(1)},
                                     Vec3{rat(0), rat(0), rat(-3)})
                    .has_value());
    CHECK_FALSE(plane_pair_direction(Vec3{rat(1), rat(2), rat(3)},
                                     Vec3{rat(2), rat(4), rat(6)})
                    .has_value());
  }

  TEST_CASE("a skew pair matches the canonicalized cross product") {
    Vec3 n1{rat(1), rat(0), rat(1)}, n2{rat(0), rat(1), rat(1)};
    auto d = plane_pair_direction(n1, n2);
    REQUIRE(d.has_value());
    CHECK(*d == Direction3::from(Vec3{rat(-1), rat(-1), rat(1)}));
  }

  TEST_CASE("the direction is orthogonal to both normals") {
    std::mt19937_64 rng(102);
    for (int i = 0; i < 200; ++i) {
      Vec3 n1 = rand_int_vec3(rng, -6, 6), n2 = rand_int_vec3(rng, -6, 6);
      if (is_zero(n1) || is_zero(n2)) continue;
      auto d = plane_pair_direction(n1, n2);
      if (!d) continue;
      CHECK(sign(dot(d->v, n1)) == 0);
      CHECK(sign(dot(d->v, n2)) == 0);
      CHECK_FALSE(is_zero(d->v));
    }
  }

  TEST_CASE("direction canonicalization is idempotent and scale-invariant") {
    std::mt19937_64 rng(103);
    for (int i = 0; i < 100; ++i) {
      Vec3 w = rand_int_vec3(rng, -9, 9);
      if (is_zero(w)) continue;
      Direction3 d = Direction3::from(w);
      CHECK(Direction3::from(d.v) == d);
      CHECK(Direction3::from(w * rat(3, 7)) == d);
      Rat m = abs(d.v.x);
      if (abs(d.v.y) > m) m = abs(d.v.y);
      if (abs(d.v.z) > m) m = abs(d.v.z);
      CHECK(m == 1);
    }
  }
}

TEST_SUITE("ray/triangle intersection") {
  static const Vec3 A{rat(0), rat(0), rat(0)};
  static const Vec3 B{rat(2), rat(0), rat(0)};
  static const Vec3 C{rat(0), rat(2), rat(0)};

  TEST_CASE("vertical drop onto the interior") {
    auto h = ray_triangle_intersect(Vec3{rat(1, 2), rat(1, 2), rat(2)},
                                    Vec3{rat(0), rat(0), rat(-1)}, A, B, C);
    REQUIRE(h.has_value());
    CHECK(h->t == 2);
    CHECK_FALSE(h->on_boundary);
  }

  TEST_CASE("a parallel ray above the plane misses") {
    CHECK_FALSE(ray_triangle_intersect(Vec3{rat(0), rat(0), rat(1)},
                                       Vec3{rat(1), rat(0), rat(0)}, A, B, C)
                    .has_value());
  }

  TEST_CASE("grazing an edge reports a boundary hit") {
    auto h = ray_triangle_intersect(Vec3{rat(-1), rat(1), rat(1)},
                                    Vec3{rat(1), rat(0), rat(-1)}, A, B, C);
    REQUIRE(h.has_value());
    CHECK(h->t == 1);
    CHECK(h->on_boundary);
  }

  TEST_CASE("a degenerate triangle is rejected") {
    CHECK_THROWS_AS(ray_triangle_intersect(Vec3{rat(0), rat(0), rat(1)},
                                           Vec3{rat(0), rat(0), rat(-1)}, A, B,
                                           Vec3{rat(4), rat(0), rat(0)}),
                    std::invalid_argument);
  }

  TEST_CASE("random queries agree with a Cramer-solve oracle") {
    std::mt19937_64 rng(104);
    int compared = 0, parallel = 0;
    for (int i = 0; i < 1000; ++i) {
      Vec3 a = rand_int_vec3(rng, -4, 4), b = rand_int_vec3(rng, -4, 4),
           c = rand_int_vec3(rng, -4, 4);
      if (is_zero(cross(b - a, c - a))) continue;
      Vec3 origin = rand_int_vec3(rng, -5, 5);
      Vec3 dir = rand_int_vec3(rng, -3, 3);
      if (is_zero(dir)) continue;
      RayOracle ref = ray_oracle(origin, dir, a, b, c);
      if (ref.kind == RayOracle::Parallel) {
        ++parallel;
        continue;
      }
      ++compared;
      auto h = ray_triangle_intersect(origin, dir, a, b, c);
      if (ref.kind == RayOracle::Miss) {
        CHECK_FALSE(h.has_value());
      } else {
        REQUIRE(h.has_value());
        CHECK(h->t == ref.t);
        CHECK(h->on_boundary == ref.boundary);
      }
    }
    CHECK(compared > 700); // the sample must be dominated by generic cases
  }
}

TEST_SUITE("point in convex polygon") {
  static const std::vector<Vec2> square = {{rat(0), rat(0)},
                                           {rat(4), rat(0)},
                                           {rat(4), rat(4)},
                                           {rat(0), rat(4)}};

  TEST_CASE("interior, boundary and exterior points") {
    CHECK(point_in_convex_polygon_2d(Vec2{rat(2), rat(2)}, square) ==
          PointLocation::Inside);
    CHECK(point_in_convex_polygon_2d(Vec2{rat(0), rat(0)}, square) ==
          PointLocation::Boundary);
    CHECK(point_in_convex_polygon_2d(Vec2{rat(2), rat(0)}, square) ==
          PointLocation::Boundary);
    CHECK(point_in_convex_polygon_2d(Vec2{rat(5), rat(2)}, square) ==
          PointLocation::Outside);
  }

  TEST_CASE("a reflex polygon is rejected") {
    std::vector<Vec2> bad = {{rat(0), rat(0)},
                             {rat(4), rat(0)},
                             {rat(1), rat(1)},
                             {rat(0), rat(4)}};
    CHECK_THROWS_AS(point_in_convex_polygon_2d(Vec2{rat(2), rat(2)}, bad),
                    std::invalid_argument);
  }
}

TEST_SUITE("strict linear feasibility") {
  TEST_CASE("a feasible triangle of constraints yields a strict witness") {
    // a > 0, b > 0, a + b < 1
    std::vector<StrictRow> rows = {{rat(-1), rat(0), rat(0)},
                                   {rat(0), rat(-1), rat(0)},
                                   {rat(1), rat(1), rat(-1)}};
    auto w = solve_strict_2var(rows);
    REQUIRE(w.has_value());
    for (const StrictRow& r : rows)
      CHECK(sign(r[0] * (*w)[0] + r[1] * (*w)[1] + r[2]) < 0);
  }

  TEST_CASE("directly contradictory rows are infeasible") {
    // a < 0 and a > 0
    std::vector<StrictRow> rows = {{rat(1), rat(0), rat(0)},
                                   {rat(-1), rat(0), rat(0)}};
    CHECK_FALSE(solve_strict_2var(rows).has_value());
  }

  TEST_CASE("pairwise-feasible but jointly infeasible rows are detected") {
    // a > 0, b > 0, a + b < -1: any two rows admit a solution, all three none.
    std::vector<StrictRow> rows = {{rat(-1), rat(0), rat(0)},
                                   {rat(0), rat(-1), rat(0)},
                                   {rat(1), rat(1), rat(1)}};
    CHECK_FALSE(solve_strict_2var(rows).has_value());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = i + 1; j < rows.size(); ++j) {
        std::vector<StrictRow> pair = {rows[i], rows[j]};
        CHECK(solve_strict_2var(pair).has_value());
      }
  }

  TEST_CASE("an empty system is trivially feasible") {
    CHECK(solve_strict_2var({}).has_value());
  }
}
