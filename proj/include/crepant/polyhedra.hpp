#pragma once

#include <vector>

#include "crepant/exact.hpp"
#include "crepant/intmat.hpp"

namespace crepant {

// Extreme rays of the dual cone {w : <w, g> >= 0 for all generators g}.
// Requires the generators to span R^n (throws NotFullDimensional) and the
// cone they generate to be strongly convex (throws NotStronglyConvex), so
// that the dual is again full-dimensional and strongly convex. Output rays
// are primitive and lex-sorted.
std::vector<IntVec> dual_cone(const std::vector<IntVec>& generators, int n);

// Extreme rays of {x : <a, x> >= 0 for every row a of `normals`} assuming the
// set is pointed (contains no line). Works for lower-dimensional cones; used
// for exact pairwise cone intersections. Primitive, lex-sorted.
std::vector<IntVec> pointed_cone_rays(const std::vector<IntVec>& normals, int n);

struct Facet {
  IntVec normal;  // inward: <normal, x> >= offset on the polytope
  Int offset;
};

// Facets of the convex hull of `points` (which must be full-dimensional in
// its ambient space). Primitive inward normals, deterministic order.
std::vector<Facet> polytope_facets(const std::vector<IntVec>& points);

struct LatticePoint {
  IntVec x;
  bool interior;
};

// All lattice points of conv(vertices), tagged interior/boundary, lex-sorted.
// Bounding-box scan with exact membership tests (int64 fast path when the
// coordinates allow it).
std::vector<LatticePoint> lattice_points_in_polytope(const std::vector<IntVec>& vertices);

// 2 * signed area of a simple polygon given in order (shoelace).
Int polygon_double_area(const std::vector<IntVec>& cycle);

}  // namespace crepant
