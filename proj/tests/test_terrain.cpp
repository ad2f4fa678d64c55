#include "doctest.h"

#include "prickle/generators.hpp"
#include "prickle/terrain.hpp"

#include "oracles.hpp"

#include <random>
#include <string>

using namespace prickle;
using namespace testutil;

TEST_SUITE("1.5D terrain basics") {
  TEST_CASE("validation requires strictly increasing x") {
    CHECK_THROWS_AS(validate_terrain1d({{rat(0), rat(0)}}), ValidationError);
    CHECK_THROWS_AS(
        validate_terrain1d({{rat(0), rat(0)}, {rat(0), rat(1)}, {rat(1), rat(0)}}),
        ValidationError);
    CHECK_THROWS_AS(
        validate_terrain1d({{rat(1), rat(0)}, {rat(0), rat(0)}}),
        ValidationError);
    CHECK(validate_terrain1d({{rat(0), rat(0)}, {rat(1), rat(5)}}).vertices.size() ==
          2);
  }

  TEST_CASE("vertex classes on a peak, a valley and a straight vertex") {
    Terrain1D peak = peak_1d();
    CHECK(classify_vertex(peak, 0) == VertexClass::Boundary);
    CHECK(classify_vertex(peak, 1) == VertexClass::ConvexInternal);
    CHECK(classify_vertex(peak, 2) == VertexClass::Boundary);

    CHECK(classify_vertex(valley_1d(), 1) == VertexClass::ConcaveInternal);

    Terrain1D straight = validate_terrain1d(
        {{rat(0), rat(0)}, {rat(1), rat(1)}, {rat(2), rat(2)}});
    CHECK(classify_vertex(straight, 1) == VertexClass::SaddleOrOther);
  }

  TEST_CASE("local maxima and peak counts in a direction") {
    Terrain1D peak = peak_1d();
    CHECK(is_local_max(peak, 1, Vec2{rat(0), rat(1)}));
    CHECK_FALSE(is_local_max(peak, 0, Vec2{rat(0), rat(1)}));
    CHECK(pi_v(peak, Vec2{rat(0), rat(1)}) == 1);
    CHECK(pi_v(peak, Vec2{rat(0), rat(-1)}) == 0);

    // Two separated peaks: both count straight up.
    Terrain1D two = validate_terrain1d({{rat(0), rat(0)},
                                        {rat(1), rat(2)},
                                        {rat(2), rat(0)},
                                        {rat(3), rat(2)},
                                        {rat(4), rat(0)}});
    CHECK(pi_v(two, Vec2{rat(0), rat(1)}) == 2);
  }
}

TEST_SUITE("2.5D terrain validation") {
  TEST_CASE("a planar split quad validates and is all boundary") {
    std::vector<Vec3> v = {{rat(0), rat(0), rat(0)},
                           {rat(1), rat(0), rat(0)},
                           {rat(1), rat(1), rat(0)},
                           {rat(0), rat(1), rat(0)}};
    Terrain2D t = validate_terrain2d(v, {{0, 1, 2}, {0, 2, 3}});
    for (int i = 0; i < 4; ++i) {
      CHECK(t.boundary[i]);
      CHECK(t.classes[i] == VertexClass::Boundary);
    }
  }

  TEST_CASE("overlapping projections are rejected and both triangles are named") {
    std::vector<Vec3> v = {{rat(0), rat(0), rat(0)}, {rat(4), rat(0), rat(0)},
                           {rat(2), rat(4), rat(0)}, {rat(1), rat(1), rat(2)},
                           {rat(3), rat(1), rat(2)}, {rat(2), rat(2), rat(2)}};
    // Triangle 1 nests strictly inside triangle 0 without sharing vertices.
    try {
      validate_terrain2d(v, {{0, 1, 2}, {3, 4, 5}});
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      std::string msg = e.what();
      CHECK(msg.find("0") != std::string::npos);
      CHECK(msg.find("1") != std::string::npos);
    }
  }

  TEST_CASE("reusing a directed edge is rejected") {
    std::vector<Vec3> v = {{rat(0), rat(0), rat(0)},
                           {rat(2), rat(0), rat(0)},
                           {rat(1), rat(2), rat(0)},
                           {rat(1), rat(1), rat(1)}};
    CHECK_THROWS_AS(validate_terrain2d(v, {{0, 1, 2}, {0, 1, 3}}),
                    ValidationError);
  }

  TEST_CASE("duplicate projected vertices are rejected") {
    std::vector<Vec3> v = {{rat(0), rat(0), rat(0)},
                           {rat(1), rat(0), rat(0)},
                           {rat(0), rat(1), rat(0)},
                           {rat(1), rat(0), rat(5)}};
    CHECK_THROWS_AS(validate_terrain2d(v, {{0, 1, 2}, {1, 3, 2}}),
                    ValidationError);
  }

  TEST_CASE("clockwise triangles are rejected") {
    std::vector<Vec3> v = {{rat(0), rat(0), rat(0)},
                           {rat(1), rat(0), rat(0)},
                           {rat(0), rat(1), rat(0)}};
    CHECK_THROWS_AS(validate_terrain2d(v, {{0, 2, 1}}), ValidationError);
  }

  TEST_CASE("a disconnected mesh is rejected") {
    std::vector<Vec3> v = {{rat(0), rat(0), rat(0)},
                           {rat(1), rat(0), rat(0)},
                           {rat(0), rat(1), rat(0)},
                           {rat(5), rat(5), rat(0)},
                           {rat(6), rat(5), rat(0)},
                           {rat(5), rat(6), rat(0)}};
    CHECK_THROWS_AS(validate_terrain2d(v, {{0, 1, 2}, {3, 4, 5}}),
                    ValidationError);
  }

  TEST_CASE("a vertex referenced by no triangle is rejected") {
    Terrain2D full = gen_grid(zero_heights(2, 2));
    auto tris = full.triangles;
    tris.pop_back(); // strands one corner of the split quad
    CHECK_THROWS_AS(validate_terrain2d(full.vertices, tris), ValidationError);
  }
}

TEST_SUITE("2.5D vertex classes") {
  TEST_CASE("a pyramid apex is the only internal vertex and is convex") {
    Terrain2D t = pyramid();
    for (int i = 0; i < 4; ++i)
      CHECK(t.classes[i] == VertexClass::Boundary);
    CHECK(t.classes[4] == VertexClass::ConvexInternal);
    CHECK(classify_vertex(t, 4) == VertexClass::ConvexInternal);
  }

  TEST_CASE("a bowl bottom is concave") {
    CHECK(bowl().classes[4] == VertexClass::ConcaveInternal);
  }

  TEST_CASE("a coplanar fan center is neither convex nor concave") {
    std::vector<Vec3> v = {{rat(1), rat(1), rat(0)},
                           {rat(-1), rat(1), rat(0)},
                           {rat(-1), rat(-1), rat(0)},
                           {rat(1), rat(-1), rat(0)},
                           {rat(0), rat(0), rat(0)}};
    Terrain2D t = validate_terrain2d(v, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
    CHECK(t.classes[4] == VertexClass::SaddleOrOther);
  }

  TEST_CASE("an alternating up/down fan center is a saddle") {
    std::vector<Vec3> v = {{rat(2), rat(0), rat(1)},
                           {rat(0), rat(2), rat(-1)},
                           {rat(-2), rat(0), rat(1)},
                           {rat(0), rat(-2), rat(-1)},
                           {rat(0), rat(0), rat(0)}};
    Terrain2D t = validate_terrain2d(v, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
    CHECK(t.classes[4] == VertexClass::SaddleOrOther);
  }
}

TEST_SUITE("2.5D local maxima and peak counts") {
  TEST_CASE("apex maxima by direction") {
    Terrain2D t = pyramid();
    CHECK(is_local_max(t, 4, Vec3{rat(0), rat(0), rat(1)}));
    CHECK_FALSE(is_local_max(t, 4, Vec3{rat(0), rat(0), rat(-1)}));
    CHECK_FALSE(is_local_max(t, 4, Vec3{rat(1), rat(1), rat(0)}));
    // A rim corner is a local maximum sideways, but it is a boundary vertex,
    // so it never contributes to the peak count.
    CHECK(is_local_max(t, 0, Vec3{rat(1), rat(1), rat(0)}));
    CHECK(pi_v(t, Vec3{rat(1), rat(1), rat(0)}) == 0);
  }

  TEST_CASE("peak counts straight up and down") {
    Terrain2D t = pyramid();
    CHECK(pi_v(t, Vec3{rat(0), rat(0), rat(1)}) == 1);
    CHECK(pi_v(t, Vec3{rat(0), rat(0), rat(-1)}) == 0);
    CHECK(pi_v_vertices(t, Vec3{rat(0), rat(0), rat(1)}) == std::vector<int>{4});

    CHECK(pi_v(two_peaks(), Vec3{rat(0), rat(0), rat(1)}) == 2);
    CHECK(pi_v(bowl(), Vec3{rat(0), rat(0), rat(1)}) == 0);
  }

  TEST_CASE("peak counts are invariant under positive scaling of the direction") {
    std::mt19937_64 rng(201);
    Terrain2D t = gen_random(40, 5, rat(1, 2));
    for (int i = 0; i < 50; ++i) {
      Vec3 d = random_upper_direction(rng);
      CHECK(pi_v(t, d) == pi_v(t, d * rat(3, 2)));
      CHECK(pi_v(t, d) == pi_v(t, d * rat(1, 7)));
    }
  }
}

TEST_SUITE("surface queries") {
  TEST_CASE("heights over the pyramid") {
    Terrain2D t = pyramid();
    auto z = surface_z_at(t, Vec2{rat(0), rat(0)});
    REQUIRE(z.has_value());
    CHECK(*z == 1);
    z = surface_z_at(t, Vec2{rat(1, 2), rat(0)});
    REQUIRE(z.has_value());
    CHECK(*z == rat(1, 2));
    CHECK_FALSE(surface_z_at(t, Vec2{rat(3), rat(0)}).has_value());
  }

  TEST_CASE("triangle location") {
    Terrain2D t = pyramid();
    auto i = locate_triangle(t, Vec2{rat(1, 2), rat(0)});
    REQUIRE(i.has_value());
    CHECK(*i == 3); // the (3, 0, 4) side faces +x
    CHECK_FALSE(locate_triangle(t, Vec2{rat(3), rat(3)}).has_value());
    // A point on a shared edge belongs to one of its incident triangles.
    auto j = locate_triangle(t, Vec2{rat(1, 2), rat(1, 2)});
    REQUIRE(j.has_value());
    CHECK((*j == 0 || *j == 3));
  }
}

TEST_SUITE("affine maps") {
  TEST_CASE("the identity map counts vertical maxima") {
    Terrain2D t = two_peaks();
    AffineMap id(identity3(), Vec3{rat(0), rat(0), rat(0)});
    AffineImage img = apply_affine(t, id);
    CHECK(img.extremal_count == pi_v(t, Vec3{rat(0), rat(0), rat(1)}));
    CHECK(img.vertices == t.vertices);
    CHECK(img.triangles == t.triangles);
  }

  TEST_CASE("a singular linear part is rejected") {
    Mat3 l = identity3();
    l[2][2] = rat(0);
    CHECK_THROWS_AS(AffineMap(l, Vec3{rat(0), rat(0), rat(0)}),
                    std::invalid_argument);
  }

  TEST_CASE("flattening with a tilt pulls the view direction off vertical") {
    // (x, y, z) -> (x, y, z/1000 + x/100): peaks of the image are the peaks
    // of the source in direction (1/100, 0, 1/1000).
    Mat3 l = identity3();
    l[2][0] = rat(1, 100);
    l[2][2] = rat(1, 1000);
    AffineMap a(l, Vec3{rat(0), rat(0), rat(0)});
    CHECK(a.up_pullback() == Vec3{rat(1, 100), rat(0), rat(1, 1000)});

    std::mt19937_64 rng(202);
    for (unsigned long seed = 0; seed < 5; ++seed) {
      Terrain2D t = gen_random(60, seed, rat(1, 2));
      CHECK(apply_affine(t, a).extremal_count == pi_v(t, a.up_pullback()));
    }
  }

  TEST_CASE("applying the map moves the vertices as stated") {
    Terrain2D t = pyramid();
    Mat3 l = identity3();
    l[0][0] = rat(2);
    AffineMap a(l, Vec3{rat(1), rat(0), rat(0)});
    AffineImage img = apply_affine(t, a);
    for (size_t i = 0; i < t.vertices.size(); ++i)
      CHECK(img.vertices[i] == a.apply(t.vertices[i]));
  }

  TEST_CASE("rotating a random direction to vertical preserves its peak count") {
    std::mt19937_64 rng(203);
    for (int i = 0; i < 10; ++i) {
      Terrain2D t = gen_random(30 + 5 * i, 900 + i, rat(1, 2));
      Vec3 d = random_unit_upper_direction(rng);
      AffineMap rot(rotation_to_vertical(d), Vec3{rat(0), rat(0), rat(0)});
      CHECK(mat_vec(rotation_to_vertical(d), d) == Vec3{rat(0), rat(0), rat(1)});
      CHECK(apply_affine(t, rot).extremal_count == pi_v(t, d));
    }
  }
}
