#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crepant/exact.hpp"
#include "crepant/intmat.hpp"
#include "crepant/polyhedra.hpp"

namespace crepant {

// Rational polyhedral cone given by generators (one per row conceptually).
struct Cone {
  int dim = 0;  // ambient dimension
  std::vector<IntVec> generators;
};

// Fan described by its maximal cones. The toolkit works with fans whose
// maximal cones are full-dimensional (single cones, crepant refinements,
// complete smooth fans).
struct Fan {
  int dim = 0;
  std::vector<Cone> cones;
  std::string name;

  // All distinct generators in first-appearance order.
  std::vector<IntVec> rays() const;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// Structural checks: primitive nonzero generators, strong convexity,
// minimal generating sets, full-dimensional maximal cones, and exact
// pairwise intersection-is-a-common-face.
ValidationReport validate_fan(const Fan& f);

// True iff the generators are part of a lattice basis: the generator count
// equals the rank and all Smith invariant factors are 1.
bool is_nonsingular(const Cone& c);

struct GorensteinData {
  RatVec gamma;  // <gamma, u> = -1 for every ray generator u
  Int ell = 0;   // lcm of the denominators of gamma
};

// Solves <gamma, u> = -1 over all rays. nullopt if no solution exists.
// Throws InvalidFan when the rays do not span (gamma would not be unique).
std::optional<GorensteinData> gorenstein_vector(const Fan& f);

// Height -1 lattice slice of a Gorenstein cone, in coordinates on the
// hyperplane <gamma, x> = -1.
struct SlicePolytope {
  int ambient_dim = 0;  // n
  int dim = 0;          // n - 1
  GorensteinData gorenstein;

  // slice coordinates of the cone's ray generators, in fan ray order
  std::vector<IntVec> vertices;

  // all lattice points of the polytope, lex-sorted, with interior tags
  std::vector<IntVec> points;
  std::vector<bool> interior;

  // lift: slice coords c -> base + basis * c lands on <gamma, x> = -1
  IntVec lift_base;              // size n
  std::vector<IntVec> lift_basis;  // dim vectors of size n (columns)

  IntVec lift(const IntVec& c) const;
  int interior_count() const;
  int boundary_count() const;
};

// Requires an integral gamma (ell == 1), else throws NonIntegralGamma.
SlicePolytope slice_polytope(const Fan& f, const GorensteinData& g);

// Dual cone of the fan's single full-dimensional cone; generators are the
// extreme rays of the cone of moment-map images.
Cone moment_cone(const Fan& f);

struct DelzantData {
  IntMatrix a;  // n x N, columns are the ray generators
  IntMatrix b;  // N x (N - n), columns span the integer kernel of a
};

DelzantData delzant_matrices(const Fan& f);

}  // namespace crepant
