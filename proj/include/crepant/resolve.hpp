#pragma once

#include <vector>

#include "crepant/fan.hpp"

namespace crepant {

// Triangulation of a slice polytope using every lattice point as a vertex.
// Simplices store sorted point indices; the simplex list and the wall list
// are lex-sorted, so equal inputs give byte-equal structures.
struct Triangulation {
  int dim = 0;                             // 1 or 2
  std::vector<IntVec> points;              // lex-sorted lattice points
  std::vector<bool> interior;              // parallel to points
  std::vector<std::vector<int>> simplices;

  struct Wall {
    std::vector<int> verts;  // sorted indices of the shared facet
    int s1 = -1, s2 = -1;    // adjacent simplices, s1 < s2
  };
  std::vector<Wall> walls;  // interior walls only
};

// Maximal basic triangulation: every lattice point is used and every simplex
// has normalized volume 1. Dimension 1 joins consecutive points; dimension 2
// is the Delaunay triangulation with a symbolic perturbation breaking
// cocircular ties deterministically. Throws DimensionUnsupported otherwise.
Triangulation triangulate_basic(const SlicePolytope& sp);

// Diagonal flip across an interior wall. The two adjacent triangles must form
// a strictly convex quadrilateral, else throws NotFlippable. 2D only.
Triangulation flop(const Triangulation& t, int wall_index);

// The fan refinement induced by lifting a slice triangulation back to the
// height -1 hyperplane. All maximal cones are unimodular and all rays pair to
// -1 against gamma; both are rechecked on construction.
struct RefinedFan {
  int dim = 0;
  Fan fan;                      // maximal cones as generator lists
  Cone original;                // the cone that was refined
  GorensteinData gorenstein;
  std::vector<IntVec> rays;     // lifted lattice points, triangulation order
  std::vector<bool> ray_interior;
  std::vector<std::vector<int>> cones;  // ray-index form of fan.cones

  struct Wall {
    std::vector<int> rays;  // sorted ray indices of the shared facet
    int c1 = -1, c2 = -1;
  };
  std::vector<Wall> walls;
};

RefinedFan refine_fan(const Fan& f, const SlicePolytope& sp, const Triangulation& t);

// Cone over the (p,q) quadrilateral at height one. Requires p > q > 0,
// gcd(p, q) = 1; throws InvalidParameters otherwise.
Fan ypq_fan(long p, long q);

struct YpqRegularity {
  bool quasiregular = false;
  Int r = 0;  // meaningful only when quasiregular
};

// Quasi-regularity <=> 4p^2 - 3q^2 is a perfect square r^2.
YpqRegularity ypq_is_quasiregular(long p, long q);

// Total space of the canonical bundle over a smooth complete fan: the cone
// over the fan's rays placed at height one, and its crepant resolution by the
// star triangulation centered at the apex ray.
struct CanonicalBundleData {
  Fan cone_fan;
  SlicePolytope slice;
  Triangulation star;
  RefinedFan resolution;
};

// Throws NotFanoCompatible when the input fan is not smooth and complete or
// when its ray hull has lattice points other than the rays and the origin.
CanonicalBundleData canonical_bundle_fan(const Fan& fano);

}  // namespace crepant
