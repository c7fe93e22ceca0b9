#include <doctest.h>

#include <algorithm>
#include <set>

#include "crepant/errors.hpp"
#include "crepant/polyhedra.hpp"
#include "crepant/resolve.hpp"

using namespace crepant;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

Fan single_cone(int dim, std::vector<IntVec> gens) {
  Fan f;
  f.dim = dim;
  f.cones.push_back({dim, std::move(gens)});
  return f;
}

struct Built {
  Fan fan;
  GorensteinData g;
  SlicePolytope slice;
  Triangulation tri;
};

Built build(Fan f) {
  Built b;
  b.fan = std::move(f);
  b.g = *gorenstein_vector(b.fan);
  b.slice = slice_polytope(b.fan, b.g);
  b.tri = triangulate_basic(b.slice);
  return b;
}

// double area of a triangle in the plane
Int tri_double_area(const Triangulation& t, const std::vector<int>& s) {
  const IntVec &a = t.points[s[0]], &b = t.points[s[1]], &c = t.points[s[2]];
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

}  // namespace

TEST_CASE("conifold square: two triangles, one flippable wall") {
  Built b = build(single_cone(3, {iv({0, 0, 1}), iv({1, 0, 1}), iv({1, 1, 1}), iv({0, 1, 1})}));
  REQUIRE(b.tri.simplices.size() == 2);
  REQUIRE(b.tri.walls.size() == 1);
  CHECK(b.tri.points ==
        std::vector<IntVec>{iv({0, 0}), iv({0, 1}), iv({1, 0}), iv({1, 1})});
  // deterministic diagonal through points 0 and 3
  CHECK(b.tri.simplices == std::vector<std::vector<int>>{{0, 1, 3}, {0, 2, 3}});
  CHECK(b.tri.walls[0].verts == std::vector<int>{0, 3});

  // the flop picks the other diagonal
  Triangulation f = flop(b.tri, 0);
  CHECK(f.simplices == std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 3}});
  REQUIRE(f.walls.size() == 1);
  CHECK(f.walls[0].verts == std::vector<int>{1, 2});

  // flopping twice is the identity
  CHECK(flop(f, 0).simplices == b.tri.simplices);

  // both triangulations are basic
  for (const auto& t : {b.tri, f}) {
    for (const auto& s : t.simplices) {
      Int a = tri_double_area(t, s);
      CHECK((a == 1 || a == -1));
    }
  }
}

TEST_CASE("pentagon: five unimodular triangles around the interior point") {
  Built b = build(single_cone(
      3, {iv({0, 0, 1}), iv({0, 1, 1}), iv({1, 2, 1}), iv({2, 1, 1}), iv({1, 0, 1})}));
  REQUIRE(b.tri.points.size() == 6);
  CHECK(b.tri.simplices.size() == 5);
  // exactly one interior point and every triangle touches it
  int center = -1;
  for (std::size_t i = 0; i < b.tri.points.size(); ++i) {
    if (b.tri.interior[i]) center = static_cast<int>(i);
  }
  REQUIRE(center >= 0);
  for (const auto& s : b.tri.simplices) {
    CHECK(std::count(s.begin(), s.end(), center) == 1);
    Int a = tri_double_area(b.tri, s);
    CHECK((a == 1 || a == -1));
  }
  // count identity 2I + B - 2
  CHECK(static_cast<int>(b.tri.simplices.size()) ==
        2 * b.slice.interior_count() + b.slice.boundary_count() - 2);
}

TEST_CASE("y53 quadrilateral: ten triangles through the diagonal chain") {
  Built b = build(ypq_fan(5, 3));
  CHECK(b.slice.interior_count() == 4);
  CHECK(b.tri.simplices.size() == 10);
  CHECK(b.tri.points.size() == 8);
  // all basic and every lattice point used
  std::set<int> used;
  for (const auto& s : b.tri.simplices) {
    used.insert(s.begin(), s.end());
    Int a = tri_double_area(b.tri, s);
    CHECK((a == 1 || a == -1));
  }
  CHECK(used.size() == b.tri.points.size());
}

TEST_CASE("one-dimensional slice joins consecutive points") {
  Built b = build(single_cone(2, {iv({1, 1}), iv({-1, 1})}));
  CHECK(b.tri.dim == 1);
  CHECK(b.tri.points == std::vector<IntVec>{iv({-1}), iv({0}), iv({1})});
  CHECK(b.tri.simplices == std::vector<std::vector<int>>{{0, 1}, {1, 2}});
  CHECK(b.tri.walls.size() == 1);  // the interior point
}

TEST_CASE("rigid triangulation: every wall refuses to flip") {
  // triangle (0,0),(2,1),(1,2) with single interior point (1,1): the star is
  // the only basic triangulation, so no wall bounds a convex quadrilateral
  Built b = build(single_cone(3, {iv({0, 0, 1}), iv({2, 1, 1}), iv({1, 2, 1})}));
  REQUIRE(b.tri.simplices.size() == 3);
  REQUIRE(b.tri.walls.size() == 3);
  for (int w = 0; w < 3; ++w) {
    CHECK_THROWS_AS(flop(b.tri, w), NotFlippable);
  }
}

TEST_CASE("flop rejects boundary-breaking wall indices") {
  Built b = build(single_cone(3, {iv({0, 0, 1}), iv({1, 0, 1}), iv({1, 1, 1}), iv({0, 1, 1})}));
  CHECK_THROWS_AS(flop(b.tri, 7), std::exception);
  // 1d triangulations cannot flip
  Built one = build(single_cone(2, {iv({1, 1}), iv({-1, 1})}));
  CHECK_THROWS_AS(flop(one.tri, 0), DimensionUnsupported);
}

TEST_CASE("unsupported slice dimension") {
  // 4d Gorenstein cone: slice is 3d
  Fan f = single_cone(4, {iv({1, 0, 0, 1}), iv({0, 1, 0, 1}), iv({0, 0, 1, 1}),
                          iv({-1, -1, -1, 1})});
  auto g = gorenstein_vector(f);
  REQUIRE(g.has_value());
  SlicePolytope sp = slice_polytope(f, *g);
  CHECK_THROWS_AS(triangulate_basic(sp), DimensionUnsupported);
}

TEST_CASE("refined fan: crepant, unimodular, contained") {
  for (auto gens : {std::vector<IntVec>{iv({0, 0, 1}), iv({1, 0, 1}), iv({1, 1, 1}), iv({0, 1, 1})},
                    std::vector<IntVec>{iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, -1, 1})},
                    std::vector<IntVec>{iv({0, 0, 1}), iv({0, 1, 1}), iv({1, 2, 1}),
                                        iv({2, 1, 1}), iv({1, 0, 1})}}) {
    Built b = build(single_cone(3, gens));
    RefinedFan rf = refine_fan(b.fan, b.slice, b.tri);
    CHECK(rf.rays.size() == b.tri.points.size());
    CHECK(rf.cones.size() == b.tri.simplices.size());
    // every ray sits on the height -1 plane of gamma
    for (const IntVec& r : rf.rays) {
      CHECK(dot(b.g.gamma, r) == Rat(-1));
    }
    // every maximal cone is nonsingular and fan validation passes
    for (const Cone& c : rf.fan.cones) CHECK(is_nonsingular(c));
    CHECK(validate_fan(rf.fan).valid);
    // rays of the refinement contain the original generators
    for (const IntVec& u : b.fan.cones[0].generators) {
      CHECK(std::find(rf.rays.begin(), rf.rays.end(), u) != rf.rays.end());
    }
  }
}

TEST_CASE("ypq constructor") {
  Fan f = ypq_fan(2, 1);
  CHECK(f.cones[0].generators ==
        std::vector<IntVec>{iv({0, 0, 1}), iv({1, 0, 1}), iv({2, 2, 1}), iv({0, 1, 1})});
  CHECK(validate_fan(f).valid);
  Fan f53 = ypq_fan(5, 3);
  CHECK(f53.cones[0].generators ==
        std::vector<IntVec>{iv({0, 0, 1}), iv({1, 0, 1}), iv({5, 5, 1}), iv({1, 2, 1})});

  CHECK_THROWS_AS(ypq_fan(1, 1), InvalidParameters);   // needs p > q
  CHECK_THROWS_AS(ypq_fan(4, 2), InvalidParameters);   // gcd > 1
  CHECK_THROWS_AS(ypq_fan(3, 0), InvalidParameters);   // q > 0
  CHECK_THROWS_AS(ypq_fan(-2, 1), InvalidParameters);  // positive
}

TEST_CASE("ypq quasi-regularity witness") {
  YpqRegularity a = ypq_is_quasiregular(7, 3);
  CHECK(a.quasiregular);
  CHECK(a.r == 13);  // 4*49 - 3*9 = 169
  CHECK_FALSE(ypq_is_quasiregular(2, 1).quasiregular);  // 13 is not a square
  YpqRegularity c = ypq_is_quasiregular(5, 4);          // 100 - 48 = 52
  CHECK_FALSE(c.quasiregular);
  YpqRegularity d = ypq_is_quasiregular(13, 7);  // 676 - 147 = 529 = 23^2
  CHECK(d.quasiregular);
  CHECK(d.r == 23);
}

TEST_CASE("canonical bundle over the projective plane") {
  Fan fano;
  fano.dim = 2;
  std::vector<IntVec> r = {iv({1, 0}), iv({0, 1}), iv({-1, -1})};
  fano.cones.push_back({2, {r[0], r[1]}});
  fano.cones.push_back({2, {r[1], r[2]}});
  fano.cones.push_back({2, {r[2], r[0]}});

  CanonicalBundleData cb = canonical_bundle_fan(fano);
  CHECK(cb.cone_fan.dim == 3);
  REQUIRE(cb.cone_fan.cones.size() == 1);
  CHECK(cb.cone_fan.cones[0].generators ==
        std::vector<IntVec>{iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, -1, 1})});
  CHECK(cb.slice.interior_count() == 1);
  // star triangulation around the apex: one triangle per fano cone
  CHECK(cb.star.simplices.size() == 3);
  CHECK(cb.resolution.rays.size() == 4);
  for (const Cone& c : cb.resolution.fan.cones) CHECK(is_nonsingular(c));
}

TEST_CASE("canonical bundle over the doubly blown-up plane") {
  Fan fano;
  fano.dim = 2;
  std::vector<IntVec> r = {iv({1, 0}), iv({0, 1}), iv({-1, 0}), iv({-1, -1}), iv({0, -1})};
  for (std::size_t i = 0; i < r.size(); ++i) {
    fano.cones.push_back({2, {r[i], r[(i + 1) % r.size()]}});
  }
  CanonicalBundleData cb = canonical_bundle_fan(fano);
  CHECK(cb.slice.points.size() == 6);
  CHECK(cb.star.simplices.size() == 5);

  // shear x -> x + z, y -> y + z identifies this cone with the pentagon cone
  // over (0,0),(0,1),(1,2),(2,1),(1,0)
  std::set<IntVec> sheared;
  for (const IntVec& u : cb.cone_fan.cones[0].generators) {
    sheared.insert(iv({static_cast<long>(u[0] + u[2]), static_cast<long>(u[1] + u[2]),
                       static_cast<long>(u[2])}));
  }
  std::set<IntVec> pentagon = {iv({0, 0, 1}), iv({0, 1, 1}), iv({1, 2, 1}), iv({2, 1, 1}),
                               iv({1, 0, 1})};
  CHECK(sheared == pentagon);
}

TEST_CASE("canonical bundle over the projective line") {
  Fan fano;
  fano.dim = 1;
  fano.cones.push_back({1, {iv({1})}});
  fano.cones.push_back({1, {iv({-1})}});
  CanonicalBundleData cb = canonical_bundle_fan(fano);
  CHECK(cb.cone_fan.cones[0].generators == std::vector<IntVec>{iv({1, 1}), iv({-1, 1})});
  CHECK(cb.slice.interior_count() == 1);
  CHECK(cb.resolution.cones.size() == 2);
}

TEST_CASE("canonical bundle rejects unsuitable fans") {
  // singular complete fan: third cone has determinant 2
  Fan sing;
  sing.dim = 2;
  std::vector<IntVec> r = {iv({1, 0}), iv({0, 1}), iv({-1, -2})};
  sing.cones.push_back({2, {r[0], r[1]}});
  sing.cones.push_back({2, {r[1], r[2]}});
  sing.cones.push_back({2, {r[2], r[0]}});
  CHECK_THROWS_AS(canonical_bundle_fan(sing), NotFanoCompatible);

  // smooth but not complete: a quarter of the plane is missing
  Fan open2;
  open2.dim = 2;
  open2.cones.push_back({2, {iv({1, 0}), iv({0, 1})}});
  open2.cones.push_back({2, {iv({0, 1}), iv({-1, 0})}});
  CHECK_THROWS_AS(canonical_bundle_fan(open2), NotFanoCompatible);

  // one-dimensional fan missing a direction
  Fan half;
  half.dim = 1;
  half.cones.push_back({1, {iv({1})}});
  CHECK_THROWS_AS(canonical_bundle_fan(half), NotFanoCompatible);
}
