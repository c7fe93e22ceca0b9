#include <doctest.h>

#include <cstdint>
#include <numbers>

#include "crepant/errors.hpp"
#include "crepant/kclass.hpp"
#include "crepant/resolve.hpp"

using namespace crepant;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

RefinedFan resolve_single(int dim, std::vector<IntVec> gens) {
  Fan f;
  f.dim = dim;
  f.cones.push_back({dim, std::move(gens)});
  GorensteinData g = *gorenstein_vector(f);
  SlicePolytope sp = slice_polytope(f, g);
  return refine_fan(f, sp, triangulate_basic(sp));
}

RefinedFan kcp2_resolved() {
  return resolve_single(3, {iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, -1, 1})});
}

std::uint64_t splitmix(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// random rational point of the cone: positive combination of the rays
RatVec random_cone_point(const RefinedFan& rf, std::uint64_t& s) {
  RatVec x(static_cast<std::size_t>(rf.dim), Rat(0));
  for (const IntVec& r : rf.rays) {
    Rat w(1 + static_cast<long>(splitmix(s) % 7), 1 + static_cast<long>(splitmix(s) % 5));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += w * Rat(r[i]);
  }
  return x;
}

}  // namespace

TEST_CASE("compact support function on the resolved anticanonical cone") {
  RefinedFan rf = kcp2_resolved();
  auto cs = find_compact_support(rf);
  REQUIRE(cs.has_value());
  CHECK(cs->margin == Rat(1));
  CHECK(is_compact(rf, cs->h));
  CHECK(is_strictly_convex(rf, cs->h));
  CHECK(convexity_margin(rf, cs->h) == Rat(1));
  // refined rays come in triangulation order: apex is index 1
  REQUIRE(rf.rays[1] == iv({0, 0, 1}));
  CHECK(cs->h.heights == RatVec{Rat(0), Rat(-1, 3), Rat(0), Rat(0)});

  KahlerClass kc = kahler_class(rf, cs->h);
  REQUIRE(kc.ray_indices.size() == 1);
  CHECK(kc.ray_indices[0] == 1);
  CHECK(kc.coefficients[0] == doctest::Approx(2 * std::numbers::pi / 3).epsilon(1e-14));
}

TEST_CASE("no compact class on the conifold") {
  RefinedFan rf =
      resolve_single(3, {iv({0, 0, 1}), iv({1, 0, 1}), iv({1, 1, 1}), iv({0, 1, 1})});
  CHECK_FALSE(find_compact_support(rf).has_value());
  // and indeed every compact candidate (h = 0) fails strict convexity
  SupportFunction zero = support_from_heights(rf, RatVec(4, Rat(0)));
  CHECK(is_compact(rf, zero));
  CHECK_FALSE(is_strictly_convex(rf, zero));
  CHECK(convexity_margin(rf, zero) == Rat(0));
}

TEST_CASE("smooth cone: the zero class is vacuously strict") {
  RefinedFan rf = resolve_single(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
  auto cs = find_compact_support(rf);
  REQUIRE(cs.has_value());
  CHECK(cs->margin == Rat(1));  // no walls: the program caps the margin at 1
  for (const Rat& h : cs->h.heights) CHECK(h == Rat(0));
}

TEST_CASE("support exists across the quasi-regular and irregular families") {
  CHECK(find_compact_support(resolve_single(
            3, {iv({0, 0, 1}), iv({1, 0, 1}), iv({2, 2, 1}), iv({0, 1, 1})}))
            .has_value());
  CHECK(find_compact_support(resolve_single(
            3, {iv({0, 0, 1}), iv({1, 0, 1}), iv({5, 5, 1}), iv({1, 2, 1})}))
            .has_value());
  CHECK(find_compact_support(resolve_single(2, {iv({1, 1}), iv({-1, 1})})).has_value());
}

TEST_CASE("support evaluation is piecewise linear") {
  RefinedFan rf = kcp2_resolved();
  SupportFunction h = find_compact_support(rf)->h;
  // at a ray: its own height
  CHECK(evaluate_support(rf, h, RatVec{Rat(0), Rat(0), Rat(1)}) == Rat(-1, 3));
  CHECK(evaluate_support(rf, h, RatVec{Rat(1), Rat(0), Rat(1)}) == Rat(0));
  // on a wall between two boundary rays the value interpolates to 0
  CHECK(evaluate_support(rf, h, RatVec{Rat(1, 2), Rat(1, 2), Rat(1)}) == Rat(0));
  // positive homogeneity
  CHECK(evaluate_support(rf, h, RatVec{Rat(0), Rat(0), Rat(5)}) == Rat(-5, 3));
  // outside the cone
  CHECK_THROWS_AS(evaluate_support(rf, h, RatVec{Rat(0), Rat(0), Rat(-1)}), OutsideDomain);
}

TEST_CASE("convexity margin is exact on hand data") {
  RefinedFan rf = kcp2_resolved();
  // pushing the apex up instead of down flips convexity: slack is -3h(apex)
  RatVec up(4, Rat(0));
  up[1] = Rat(1);
  SupportFunction h = support_from_heights(rf, up);
  CHECK(is_compact(rf, h));
  CHECK_FALSE(is_strictly_convex(rf, h));
  CHECK(convexity_margin(rf, h) == Rat(-3));

  RatVec down(4, Rat(0));
  down[1] = Rat(-1);
  CHECK(convexity_margin(rf, support_from_heights(rf, down)) == Rat(3));
}

TEST_CASE("compactness and the kahler class guard") {
  RefinedFan rf = kcp2_resolved();
  RatVec bad(4, Rat(0));
  bad[0] = Rat(-1);  // nonzero on a boundary ray
  SupportFunction h = support_from_heights(rf, bad);
  CHECK_FALSE(is_compact(rf, h));
  CHECK_THROWS_AS(kahler_class(rf, h), NotCompact);
}

TEST_CASE("strictly convex support functions are subadditive") {
  for (auto gens : {std::vector<IntVec>{iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, -1, 1})},
                    std::vector<IntVec>{iv({0, 0, 1}), iv({1, 0, 1}), iv({2, 2, 1}),
                                        iv({0, 1, 1})}}) {
    RefinedFan rf = resolve_single(3, gens);
    SupportFunction h = find_compact_support(rf)->h;
    std::uint64_t seed = 0xabcdef12ull;
    for (int trial = 0; trial < 100; ++trial) {
      RatVec x = random_cone_point(rf, seed);
      RatVec y = random_cone_point(rf, seed);
      RatVec xy(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) xy[i] = x[i] + y[i];
      Rat lhs = evaluate_support(rf, h, xy);
      Rat rhs = evaluate_support(rf, h, x) + evaluate_support(rf, h, y);
      CHECK(lhs <= rhs);
    }
  }
}
