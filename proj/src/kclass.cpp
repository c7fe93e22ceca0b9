#include "crepant/kclass.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crepant/errors.hpp"
#include "crepant/lp.hpp"

namespace crepant {

namespace {

// barycentric coefficients of v in the generator basis of cone c:
// v = sum alpha_j * gen_j
RatVec generator_coefficients(const RefinedFan& rf, int cone, const IntVec& v) {
  std::vector<IntVec> gens;
  for (int idx : rf.cones[cone]) gens.push_back(rf.rays[idx]);
  IntMatrix gt = IntMatrix::from_rows(gens).transposed();
  RatVec b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b[i] = Rat(v[i]);
  RatVec alpha;
  if (!solve_rational(gt, b, alpha)) throw std::logic_error("unimodular solve failed");
  return alpha;
}

int opposite_ray(const RefinedFan& rf, const RefinedFan::Wall& w, int cone) {
  for (int idx : rf.cones[cone]) {
    bool in_wall = false;
    for (int v : w.rays)
      if (v == idx) { in_wall = true; break; }
    if (!in_wall) return idx;
  }
  throw std::logic_error("wall equals its cone");
}

}  // namespace

SupportFunction support_from_heights(const RefinedFan& rf, const RatVec& heights) {
  if (heights.size() != rf.rays.size())
    throw std::invalid_argument("one height per ray required");
  SupportFunction h;
  h.heights = heights;
  for (std::size_t c = 0; c < rf.cones.size(); ++c) {
    std::vector<IntVec> gens;
    RatVec lambda;
    for (int idx : rf.cones[c]) {
      gens.push_back(rf.rays[idx]);
      lambda.push_back(heights[idx]);
    }
    RatVec l;
    if (!solve_rational(IntMatrix::from_rows(gens), lambda, l))
      throw std::logic_error("covector solve failed on a unimodular cone");
    h.covectors.push_back(l);
  }
  // wall consistency is automatic (shared generators share heights); assert
  for (const RefinedFan::Wall& w : rf.walls)
    for (int idx : w.rays)
      if (dot(h.covectors[w.c1], rf.rays[idx]) != dot(h.covectors[w.c2], rf.rays[idx]))
        throw std::logic_error("covectors disagree on a shared wall");
  return h;
}

Rat evaluate_support(const RefinedFan& rf, const SupportFunction& h, const RatVec& x) {
  for (std::size_t c = 0; c < rf.cones.size(); ++c) {
    // x inside the simplicial cone iff all generator coefficients >= 0
    std::vector<IntVec> gens;
    for (int idx : rf.cones[c]) gens.push_back(rf.rays[idx]);
    IntMatrix gt = IntMatrix::from_rows(gens).transposed();
    RatVec alpha;
    if (!solve_rational(gt, x, alpha)) continue;
    bool inside = true;
    for (const Rat& a : alpha)
      if (a < 0) { inside = false; break; }
    if (inside) return dot(h.covectors[c], x);
  }
  throw OutsideDomain("point lies outside the fan support");
}

Rat convexity_margin(const RefinedFan& rf, const SupportFunction& h) {
  bool first = true;
  Rat margin = 0;
  for (const RefinedFan::Wall& w : rf.walls) {
    for (auto [near, far] : {std::pair{w.c1, w.c2}, std::pair{w.c2, w.c1}}) {
      int opp = opposite_ray(rf, w, far);
      Rat slack = h.heights[opp] - dot(h.covectors[near], rf.rays[opp]);
      if (first || slack < margin) {
        margin = slack;
        first = false;
      }
    }
  }
  if (first) {
    // no interior walls (single cone): vacuously strictly convex
    return Rat(1);
  }
  return margin;
}

bool is_strictly_convex(const RefinedFan& rf, const SupportFunction& h) {
  return convexity_margin(rf, h) > 0;
}

bool is_compact(const RefinedFan& rf, const SupportFunction& h) {
  for (std::size_t i = 0; i < rf.rays.size(); ++i)
    if (!rf.ray_interior[i] && h.heights[i] != 0) return false;
  return true;
}

std::optional<CompactSupport> find_compact_support(const RefinedFan& rf) {
  std::vector<int> interior_rays;
  std::vector<int> var_of(rf.rays.size(), -1);
  for (std::size_t i = 0; i < rf.rays.size(); ++i)
    if (rf.ray_interior[i]) {
      var_of[i] = static_cast<int>(interior_rays.size());
      interior_rays.push_back(static_cast<int>(i));
    }
  int nl = static_cast<int>(interior_rays.size());
  int sv = nl;  // margin variable index

  LinearProgram lp;
  lp.num_vars = nl + 1;
  lp.objective.assign(nl + 1, Rat(0));
  lp.objective[sv] = 1;
  lp.lower.assign(nl + 1, std::nullopt);
  lp.upper.assign(nl + 1, std::nullopt);
  for (int j = 0; j < nl; ++j) {
    lp.lower[j] = Rat(-1);
    lp.upper[j] = Rat(0);
  }
  lp.upper[sv] = Rat(1);

  for (const RefinedFan::Wall& w : rf.walls) {
    for (auto [near, far] : {std::pair{w.c1, w.c2}, std::pair{w.c2, w.c1}}) {
      int opp = opposite_ray(rf, w, far);
      // height(opp) - <covector(near), opp> >= s, expanded over the heights
      // of near's generators via the barycentric coefficients of opp
      RatVec row(nl + 1, Rat(0));
      if (var_of[opp] >= 0) row[var_of[opp]] += 1;
      RatVec alpha = generator_coefficients(rf, near, rf.rays[opp]);
      const std::vector<int>& gens = rf.cones[near];
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (var_of[gens[j]] >= 0) row[var_of[gens[j]]] -= alpha[j];
      row[sv] -= 1;
      lp.add(row, LpRel::Ge, Rat(0));
    }
  }

  LpResult r = lp_solve(lp);
  if (r.status != LpStatus::Optimal) throw std::logic_error("certification program must be bounded");
  if (r.value <= 0) return std::nullopt;

  RatVec heights(rf.rays.size(), Rat(0));
  for (int j = 0; j < nl; ++j) heights[interior_rays[j]] = r.point[j];
  CompactSupport cs{support_from_heights(rf, heights), r.value};
  if (!is_compact(rf, cs.h) || !is_strictly_convex(rf, cs.h))
    throw std::logic_error("certified support failed recheck");
  if (convexity_margin(rf, cs.h) < cs.margin)
    throw std::logic_error("wall margin below certified optimum");
  return cs;
}

KahlerClass kahler_class(const RefinedFan& rf, const SupportFunction& h) {
  if (!is_compact(rf, h)) throw NotCompact("support function does not vanish on the boundary");
  KahlerClass k;
  for (std::size_t i = 0; i < rf.rays.size(); ++i) {
    if (!rf.ray_interior[i]) continue;
    k.ray_indices.push_back(static_cast<int>(i));
    k.coefficients.push_back(-2.0 * std::numbers::pi * static_cast<double>(h.heights[i]));
  }
  return k;
}

}  // namespace crepant
