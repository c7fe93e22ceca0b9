#pragma once

#include <optional>
#include <vector>

#include "crepant/exact.hpp"
#include "crepant/resolve.hpp"

namespace crepant {

// Piecewise-linear function on a refined fan, determined by one rational
// height per ray: h(x) = <covector[c], x> on maximal cone c.
struct SupportFunction {
  RatVec heights;                 // per ray, refined-fan ray order
  std::vector<RatVec> covectors;  // per maximal cone
};

// Solves the covector of every maximal cone from the ray heights. Consistency
// across shared walls holds by construction on a simplicial fan and is
// asserted.
SupportFunction support_from_heights(const RefinedFan& rf, const RatVec& heights);

// h at a rational point of the support. Throws OutsideDomain when the point
// is in no maximal cone.
Rat evaluate_support(const RefinedFan& rf, const SupportFunction& h, const RatVec& x);

// Strict convexity across every interior wall: the covector of each cone,
// tested against the opposite ray of the neighbor, stays strictly below that
// ray's height.
bool is_strictly_convex(const RefinedFan& rf, const SupportFunction& h);

// min over walls and orientations of (height of opposite ray - extension of
// the near cone's covector); positive iff strictly convex.
Rat convexity_margin(const RefinedFan& rf, const SupportFunction& h);

// Compact classes vanish on every boundary ray of the refinement.
bool is_compact(const RefinedFan& rf, const SupportFunction& h);

struct CompactSupport {
  SupportFunction h;
  Rat margin;  // optimum of the certification program, in (0, 1]
};

// Exact LP over the interior-ray heights, maximizing the worst wall margin
// subject to boundary heights 0 and -1 <= height <= 0. Returns nullopt when
// the optimum is not strictly positive (no compact strictly convex class).
std::optional<CompactSupport> find_compact_support(const RefinedFan& rf);

struct KahlerClass {
  std::vector<int> ray_indices;      // interior rays carrying the class
  std::vector<double> coefficients;  // -2*pi*height, strictly positive
};

// Throws NotCompact when h does not vanish on the boundary.
KahlerClass kahler_class(const RefinedFan& rf, const SupportFunction& h);

}  // namespace crepant
