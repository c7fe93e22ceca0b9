#include "crepant/resolve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "crepant/errors.hpp"

namespace crepant {

namespace {

Int orient(const IntVec& a, const IntVec& b, const IntVec& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

// Sign of the incircle determinant for query point d against triangle
// (a, b, c), with cocircular ties broken by a lexicographic perturbation of
// the paraboloid lift: height(p) = |p|^2 - eps^(rank(p)+1). Positive means
// "inside" for a counterclockwise triangle. Ranks are the point indices in
// the lex-sorted point list, so the result is deterministic.
int incircle_perturbed(const std::vector<IntVec>& pts, int ia, int ib, int ic, int id) {
  IntVec a = pts[ia], b = pts[ib], c = pts[ic];
  const IntVec& d = pts[id];
  if (orient(a, b, c) < 0) {
    std::swap(b, c);
    std::swap(ib, ic);
  }
  auto row = [&](const IntVec& p, Int& x, Int& y, Int& w) {
    x = p[0] - d[0];
    y = p[1] - d[1];
    w = x * x + y * y;
  };
  Int ax, ay, aw, bx, by, bw, cx, cy, cw;
  row(a, ax, ay, aw);
  row(b, bx, by, bw);
  row(c, cx, cy, cw);
  Int det = ax * (by * cw - bw * cy) - ay * (bx * cw - bw * cx) + aw * (bx * cy - by * cx);
  if (det != 0) return det > 0 ? 1 : -1;

  // epsilon expansion: smaller rank dominates; coefficients are the
  // third-column cofactors of the lifted determinant
  std::vector<std::pair<int, Int>> terms = {
      {ia, -orient(b, c, d)}, {ib, orient(a, c, d)}, {ic, -orient(a, b, d)}, {id, orient(a, b, c)}};
  std::sort(terms.begin(), terms.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  for (const auto& [rank, coef] : terms) {
    if (coef != 0) return coef > 0 ? 1 : -1;
  }
  return 0;  // unreachable: (a,b,c) is a proper triangle
}

std::vector<Triangulation::Wall> build_walls(const std::vector<std::vector<int>>& simplices) {
  std::map<std::vector<int>, std::vector<int>> facets;
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    const std::vector<int>& sx = simplices[s];
    for (std::size_t drop = 0; drop < sx.size(); ++drop) {
      std::vector<int> fct;
      for (std::size_t i = 0; i < sx.size(); ++i)
        if (i != drop) fct.push_back(sx[i]);
      facets[fct].push_back(static_cast<int>(s));
    }
  }
  std::vector<Triangulation::Wall> walls;
  for (const auto& [verts, owners] : facets) {
    if (owners.size() > 2) throw std::logic_error("facet shared by more than two simplices");
    if (owners.size() == 2) walls.push_back({verts, std::min(owners[0], owners[1]),
                                             std::max(owners[0], owners[1])});
  }
  return walls;  // map iteration is already sorted by vertex tuple
}

void check_triangulation(const Triangulation& t) {
  int interior_count = 0, boundary_count = 0;
  for (bool b : t.interior) (b ? interior_count : boundary_count) += 1;
  long expected = t.dim == 2 ? 2L * interior_count + boundary_count - 2
                             : static_cast<long>(t.points.size()) - 1;
  if (static_cast<long>(t.simplices.size()) != expected)
    throw std::logic_error("simplex count disagrees with lattice point counts");
  if (t.dim == 2) {
    for (const std::vector<int>& s : t.simplices)
      if (boost::multiprecision::abs(orient(t.points[s[0]], t.points[s[1]], t.points[s[2]])) != 1)
        throw std::logic_error("non-basic simplex in triangulation");
  }
}

}  // namespace

Triangulation triangulate_basic(const SlicePolytope& sp) {
  if (sp.dim != 1 && sp.dim != 2)
    throw DimensionUnsupported("triangulation supports slice dimensions 1 and 2, got " +
                               std::to_string(sp.dim));
  Triangulation t;
  t.dim = sp.dim;
  t.points = sp.points;      // lex-sorted by construction
  t.interior = sp.interior;
  int np = static_cast<int>(t.points.size());

  if (sp.dim == 1) {
    for (int i = 0; i + 1 < np; ++i) t.simplices.push_back({i, i + 1});
  } else {
    for (int i = 0; i < np; ++i)
      for (int j = i + 1; j < np; ++j)
        for (int k = j + 1; k < np; ++k) {
          if (orient(t.points[i], t.points[j], t.points[k]) == 0) continue;
          bool empty_circle = true;
          for (int l = 0; l < np && empty_circle; ++l) {
            if (l == i || l == j || l == k) continue;
            if (incircle_perturbed(t.points, i, j, k, l) > 0) empty_circle = false;
          }
          if (empty_circle) t.simplices.push_back({i, j, k});
        }
  }
  t.walls = build_walls(t.simplices);
  check_triangulation(t);
  return t;
}

Triangulation flop(const Triangulation& t, int wall_index) {
  if (t.dim != 2) throw DimensionUnsupported("flips are defined for 2-dimensional slices");
  if (wall_index < 0 || wall_index >= static_cast<int>(t.walls.size()))
    throw InvalidParameters("wall index out of range");
  const Triangulation::Wall& w = t.walls[wall_index];
  int a = w.verts[0], b = w.verts[1];
  auto opposite = [&](int s) {
    for (int v : t.simplices[s])
      if (v != a && v != b) return v;
    throw std::logic_error("degenerate simplex");
  };
  int c = opposite(w.s1), d = opposite(w.s2);

  // strict convexity of the quad <=> the diagonals ab and cd properly cross
  Int o1 = orient(t.points[c], t.points[d], t.points[a]);
  Int o2 = orient(t.points[c], t.points[d], t.points[b]);
  Int o3 = orient(t.points[a], t.points[b], t.points[c]);
  Int o4 = orient(t.points[a], t.points[b], t.points[d]);
  if (!(o1 * o2 < 0 && o3 * o4 < 0))
    throw NotFlippable("adjacent triangles do not form a strictly convex quadrilateral");

  Triangulation out;
  out.dim = t.dim;
  out.points = t.points;
  out.interior = t.interior;
  out.simplices = t.simplices;
  std::vector<int> sa = {a, c, d}, sb = {b, c, d};
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  out.simplices[w.s1] = sa;
  out.simplices[w.s2] = sb;
  std::sort(out.simplices.begin(), out.simplices.end());
  out.walls = build_walls(out.simplices);
  check_triangulation(out);
  return out;
}

RefinedFan refine_fan(const Fan& f, const SlicePolytope& sp, const Triangulation& t) {
  if (f.cones.size() != 1) throw InvalidFan("refinement applies to a single-cone fan");
  int n = f.dim;

  RefinedFan rf;
  rf.dim = n;
  rf.original = f.cones[0];
  rf.gorenstein = sp.gorenstein;
  rf.ray_interior = t.interior;
  rf.cones = t.simplices;
  for (const Triangulation::Wall& w : t.walls) rf.walls.push_back({w.verts, w.s1, w.s2});

  IntVec gamma(n);
  for (int i = 0; i < n; ++i) gamma[i] = boost::multiprecision::numerator(sp.gorenstein.gamma[i]);
  std::vector<IntVec> original_normals = dual_cone(rf.original.generators, n);

  for (const IntVec& c : t.points) {
    IntVec ray = sp.lift(c);
    if (dot(gamma, ray) != -1) throw std::logic_error("lifted ray misses the height -1 slice");
    for (const IntVec& w : original_normals)
      if (dot(w, ray) < 0) throw std::logic_error("lifted ray escapes the original cone");
    rf.rays.push_back(ray);
  }

  rf.fan.dim = n;
  rf.fan.name = f.name;
  for (const std::vector<int>& s : t.simplices) {
    Cone c;
    c.dim = n;
    for (int idx : s) c.generators.push_back(rf.rays[idx]);
    Int d = IntMatrix::from_rows(c.generators).det();
    if (boost::multiprecision::abs(d) != 1)
      throw std::logic_error("refined cone is not unimodular");
    rf.fan.cones.push_back(std::move(c));
  }
  return rf;
}

Fan ypq_fan(long p, long q) {
  if (!(p > q && q > 0)) throw InvalidParameters("need p > q > 0");
  if (std::gcd(p, q) != 1) throw InvalidParameters("need gcd(p, q) = 1");
  Fan f;
  f.dim = 3;
  f.name = "ypq_" + std::to_string(p) + "_" + std::to_string(q);
  Cone c;
  c.dim = 3;
  c.generators = {{Int(0), Int(0), Int(1)},
                  {Int(1), Int(0), Int(1)},
                  {Int(p), Int(p), Int(1)},
                  {Int(p - q - 1), Int(p - q), Int(1)}};
  f.cones.push_back(c);
  return f;
}

YpqRegularity ypq_is_quasiregular(long p, long q) {
  if (!(p > q && q > 0) || std::gcd(p, q) != 1)
    throw InvalidParameters("need coprime p > q > 0");
  Int d = Int(4) * p * p - Int(3) * q * q;
  Int r = boost::multiprecision::sqrt(d);
  if (r * r == d) return {true, r};
  return {false, Int(0)};
}

CanonicalBundleData canonical_bundle_fan(const Fan& fano) {
  ValidationReport rep = validate_fan(fano);
  if (!rep.valid)
    throw NotFanoCompatible("input fan is invalid: " + rep.violations.front());
  int m = fano.dim;
  for (const Cone& c : fano.cones)
    if (!is_nonsingular(c)) throw NotFanoCompatible("fan has a singular maximal cone");

  // completeness: every facet of every maximal cone is shared by exactly two
  if (m == 1) {
    std::set<IntVec> rays(fano.cones[0].generators.begin(), fano.cones[0].generators.end());
    for (const Cone& c : fano.cones) rays.insert(c.generators.begin(), c.generators.end());
    if (rays != std::set<IntVec>{{Int(1)}, {Int(-1)}})
      throw NotFanoCompatible("1-dimensional fan is not complete");
  } else {
    std::map<std::vector<IntVec>, int> wall_count;
    for (const Cone& c : fano.cones) {
      for (std::size_t drop = 0; drop < c.generators.size(); ++drop) {
        std::vector<IntVec> wall;
        for (std::size_t i = 0; i < c.generators.size(); ++i)
          if (i != drop) wall.push_back(c.generators[i]);
        std::sort(wall.begin(), wall.end());
        wall_count[wall] += 1;
      }
    }
    for (const auto& [wall, count] : wall_count)
      if (count != 2) throw NotFanoCompatible("fan is not complete: unmatched wall");
  }

  CanonicalBundleData out;
  out.cone_fan.dim = m + 1;
  out.cone_fan.name = fano.name.empty() ? "canonical_bundle" : "canonical_bundle_" + fano.name;
  Cone big;
  big.dim = m + 1;
  for (const IntVec& u : fano.rays()) {
    IntVec v = u;
    v.push_back(Int(1));
    big.generators.push_back(v);
  }
  out.cone_fan.cones.push_back(big);

  auto g = gorenstein_vector(out.cone_fan);
  if (!g || g->ell != 1) throw std::logic_error("height-one cone must be Gorenstein integral");
  out.slice = slice_polytope(out.cone_fan, *g);

  // the slice must be the ray hull with the origin as its only extra point
  std::set<IntVec> ray_set;
  for (const IntVec& u : fano.rays()) ray_set.insert(u);
  IntVec origin(m, Int(0));
  int origin_idx = -1;
  for (std::size_t i = 0; i < out.slice.points.size(); ++i) {
    const IntVec& p = out.slice.points[i];
    if (out.slice.interior[i]) {
      if (p != origin) throw NotFanoCompatible("ray hull has an interior point besides the origin");
      origin_idx = static_cast<int>(i);
    } else if (!ray_set.count(p)) {
      throw NotFanoCompatible("ray hull has boundary lattice points that are not rays");
    }
  }
  if (origin_idx < 0) throw NotFanoCompatible("origin is not interior to the ray hull");

  std::map<IntVec, int> index_of;
  for (std::size_t i = 0; i < out.slice.points.size(); ++i) index_of[out.slice.points[i]] = static_cast<int>(i);

  out.star.dim = m;
  out.star.points = out.slice.points;
  out.star.interior = out.slice.interior;
  for (const Cone& c : fano.cones) {
    std::vector<int> s = {origin_idx};
    for (const IntVec& u : c.generators) s.push_back(index_of.at(u));
    std::sort(s.begin(), s.end());
    out.star.simplices.push_back(s);
  }
  std::sort(out.star.simplices.begin(), out.star.simplices.end());
  out.star.walls = build_walls(out.star.simplices);
  if (m <= 2) check_triangulation(out.star);

  out.resolution = refine_fan(out.cone_fan, out.slice, out.star);
  return out;
}

}  // namespace crepant
