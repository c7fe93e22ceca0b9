#pragma once

#include <optional>
#include <vector>

#include "crepant/exact.hpp"

namespace crepant {

enum class LpRel { Le, Eq, Ge };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpConstraint {
  RatVec coeffs;
  LpRel rel;
  Rat rhs;
};

// maximize objective . x subject to the constraints and per-variable bounds
// (absent bound = unbounded on that side; variables are free by default).
struct LinearProgram {
  int num_vars = 0;
  RatVec objective;
  std::vector<LpConstraint> constraints;
  std::vector<std::optional<Rat>> lower;  // may be empty = all absent
  std::vector<std::optional<Rat>> upper;

  LpConstraint& add(const RatVec& coeffs, LpRel rel, const Rat& rhs) {
    constraints.push_back({coeffs, rel, rhs});
    return constraints.back();
  }
};

struct LpResult {
  LpStatus status;
  RatVec point;  // optimal assignment of the original variables (Optimal only)
  Rat value;     // optimal objective value (Optimal only)
};

// Exact two-phase simplex with Bland's rule; terminates on every input.
LpResult lp_solve(const LinearProgram& lp);

}  // namespace crepant
