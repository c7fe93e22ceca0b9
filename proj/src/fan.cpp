#include "crepant/fan.hpp"

#include <algorithm>
#include <set>

#include "crepant/errors.hpp"
#include "crepant/lp.hpp"

namespace crepant {

std::vector<IntVec> Fan::rays() const {
  std::vector<IntVec> out;
  std::set<IntVec> seen;
  for (const Cone& c : cones)
    for (const IntVec& g : c.generators)
      if (seen.insert(g).second) out.push_back(g);
  return out;
}

namespace {

// exists w with <w, g> > 0 for all g: scale-normalized via a box
bool strongly_convex(const std::vector<IntVec>& gens, int n) {
  LinearProgram lp;
  lp.num_vars = n + 1;  // w, s
  lp.objective.assign(n + 1, Rat(0));
  lp.objective[n] = 1;
  lp.lower.assign(n + 1, std::nullopt);
  lp.upper.assign(n + 1, std::nullopt);
  for (int i = 0; i < n; ++i) {
    lp.lower[i] = Rat(-1);
    lp.upper[i] = Rat(1);
  }
  lp.upper[n] = Rat(1);
  for (const IntVec& g : gens) {
    RatVec row(n + 1, Rat(0));
    for (int i = 0; i < n; ++i) row[i] = Rat(g[i]);
    row[n] = -1;
    lp.add(row, LpRel::Ge, Rat(0));
  }
  LpResult r = lp_solve(lp);
  return r.status == LpStatus::Optimal && r.value > 0;
}

// is g a nonnegative combination of the others
bool in_cone_of_others(const std::vector<IntVec>& gens, std::size_t skip, int n) {
  LinearProgram lp;
  int k = static_cast<int>(gens.size()) - 1;
  lp.num_vars = k;
  lp.objective.assign(k, Rat(0));
  lp.lower.assign(k, Rat(0));
  lp.upper.assign(k, std::nullopt);
  for (int c = 0; c < n; ++c) {
    RatVec row(k, Rat(0));
    int idx = 0;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j == skip) continue;
      row[idx++] = Rat(gens[j][c]);
    }
    lp.add(row, LpRel::Eq, Rat(gens[skip][c]));
  }
  return lp_solve(lp).status == LpStatus::Optimal;
}

// generator subset lying inside the other cone (dual description)
std::set<IntVec> gens_inside(const Cone& c, const std::vector<IntVec>& other_normals) {
  std::set<IntVec> s;
  for (const IntVec& g : c.generators) {
    bool inside = true;
    for (const IntVec& w : other_normals)
      if (dot(w, g) < 0) { inside = false; break; }
    if (inside) s.insert(g);
  }
  return s;
}

// is `sub` exactly the generator set of a face of c (normals = facet normals)
bool is_face_generator_set(const Cone& c, const std::vector<IntVec>& normals,
                           const std::set<IntVec>& sub) {
  std::vector<IntVec> vanishing;
  for (const IntVec& w : normals) {
    bool all_zero = true;
    for (const IntVec& g : sub)
      if (dot(w, g) != 0) { all_zero = false; break; }
    if (all_zero) vanishing.push_back(w);
  }
  std::set<IntVec> closure;
  for (const IntVec& g : c.generators) {
    bool z = true;
    for (const IntVec& w : vanishing)
      if (dot(w, g) != 0) { z = false; break; }
    if (z) closure.insert(g);
  }
  return closure == sub;
}

}  // namespace

ValidationReport validate_fan(const Fan& f) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& msg) {
    rep.valid = false;
    rep.violations.push_back(msg);
  };
  int n = f.dim;
  if (f.cones.empty()) {
    fail("fan has no cones");
    return rep;
  }

  std::vector<std::vector<IntVec>> normals(f.cones.size());
  for (std::size_t ci = 0; ci < f.cones.size(); ++ci) {
    const Cone& c = f.cones[ci];
    std::string tag = "cone " + std::to_string(ci);
    if (c.dim != n) fail(tag + ": ambient dimension mismatch");
    if (c.generators.empty()) {
      fail(tag + ": no generators");
      continue;
    }
    bool gens_ok = true;
    for (const IntVec& g : c.generators) {
      if (static_cast<int>(g.size()) != n) {
        fail(tag + ": generator arity mismatch");
        gens_ok = false;
        break;
      }
      if (is_zero(g)) {
        fail(tag + ": zero generator");
        gens_ok = false;
      } else if (primitive(g) != g) {
        fail(tag + ": non-primitive generator");
        gens_ok = false;
      }
    }
    if (!gens_ok) continue;
    std::set<IntVec> dedup(c.generators.begin(), c.generators.end());
    if (dedup.size() != c.generators.size()) {
      fail(tag + ": repeated generator");
      continue;
    }
    if (!strongly_convex(c.generators, n)) {
      fail(tag + ": not strongly convex");
      continue;
    }
    if (c.generators.size() > 1) {
      for (std::size_t i = 0; i < c.generators.size(); ++i)
        if (in_cone_of_others(c.generators, i, n))
          fail(tag + ": redundant generator " + std::to_string(i));
    }
    if (IntMatrix::from_rows(c.generators).rank() != n) {
      fail(tag + ": maximal cone not full-dimensional");
      continue;
    }
    normals[ci] = dual_cone(c.generators, n);
  }
  if (!rep.valid) return rep;

  for (std::size_t i = 0; i < f.cones.size(); ++i)
    for (std::size_t j = i + 1; j < f.cones.size(); ++j) {
      std::string tag = "cones " + std::to_string(i) + "/" + std::to_string(j);
      std::set<IntVec> si = gens_inside(f.cones[i], normals[j]);
      std::set<IntVec> sj = gens_inside(f.cones[j], normals[i]);
      if (si != sj) {
        fail(tag + ": intersection is not a common face");
        continue;
      }
      std::vector<IntVec> combined = normals[i];
      combined.insert(combined.end(), normals[j].begin(), normals[j].end());
      std::vector<IntVec> w_rays = pointed_cone_rays(combined, n);
      std::set<IntVec> wset(w_rays.begin(), w_rays.end());
      if (wset != si) {
        fail(tag + ": intersection has extreme rays outside the shared generators");
        continue;
      }
      if (!is_face_generator_set(f.cones[i], normals[i], si) ||
          !is_face_generator_set(f.cones[j], normals[j], sj))
        fail(tag + ": shared generators do not span a face of both cones");
    }
  return rep;
}

bool is_nonsingular(const Cone& c) {
  if (c.generators.empty()) return true;
  IntMatrix g = IntMatrix::from_rows(c.generators);
  if (g.rank() != static_cast<int>(c.generators.size())) return false;
  for (const Int& d : smith_normal_form(g))
    if (d != 1) return false;
  return true;
}

std::optional<GorensteinData> gorenstein_vector(const Fan& f) {
  std::vector<IntVec> rays = f.rays();
  IntMatrix u = IntMatrix::from_rows(rays);
  if (u.rank() != f.dim) throw InvalidFan("fan rays do not span the ambient space");
  RatVec b(rays.size(), Rat(-1)), gamma;
  if (!solve_rational(u, b, gamma)) return std::nullopt;
  Int ell = 1;
  for (const Rat& x : gamma)
    ell = boost::multiprecision::lcm(ell, boost::multiprecision::denominator(x));
  return GorensteinData{gamma, ell};
}

IntVec SlicePolytope::lift(const IntVec& c) const {
  IntVec x = lift_base;
  for (std::size_t i = 0; i < lift_basis.size(); ++i)
    for (std::size_t r = 0; r < x.size(); ++r) x[r] += c[i] * lift_basis[i][r];
  return x;
}

int SlicePolytope::interior_count() const {
  int k = 0;
  for (bool b : interior) k += b ? 1 : 0;
  return k;
}

int SlicePolytope::boundary_count() const {
  return static_cast<int>(points.size()) - interior_count();
}

SlicePolytope slice_polytope(const Fan& f, const GorensteinData& g) {
  if (g.ell != 1) throw NonIntegralGamma("gamma is not integral, denominator lcm " + g.ell.str());
  int n = f.dim;
  IntVec gamma(n);
  for (int i = 0; i < n; ++i) gamma[i] = boost::multiprecision::numerator(g.gamma[i]);

  SlicePolytope sp;
  sp.ambient_dim = n;
  sp.dim = n - 1;
  sp.gorenstein = g;

  // basis of ker(gamma) over Z plus a vector z with <gamma, z> = 1;
  // [basis | z] is unimodular, so slice coordinates are integral
  sp.lift_basis = integer_kernel_basis(IntMatrix::from_rows({gamma}));
  if (static_cast<int>(sp.lift_basis.size()) != n - 1)
    throw InvalidFan("gamma kernel has unexpected rank");
  HnfResult hr = hermite_normal_form(IntMatrix::from_cols({gamma}));
  if (hr.h.at(0, 0) != 1) throw InvalidFan("gamma is not primitive");
  IntVec z = hr.u.row(0);
  sp.lift_base.assign(n, Int(0));
  for (int i = 0; i < n; ++i) sp.lift_base[i] = -z[i];

  std::vector<IntVec> cols = sp.lift_basis;
  cols.push_back(z);
  IntMatrix m = IntMatrix::from_cols(cols);
  std::vector<RatVec> minv = rational_inverse(m);

  auto coords = [&](const IntVec& u) {
    IntVec c(n - 1);
    for (int i = 0; i < n - 1; ++i) {
      Rat v = dot(minv[i], u);
      if (boost::multiprecision::denominator(v) != 1)
        throw InvalidFan("non-integral slice coordinate");
      c[i] = boost::multiprecision::numerator(v);
    }
    return c;
  };

  for (const IntVec& u : f.rays()) sp.vertices.push_back(coords(u));
  for (const LatticePoint& p : lattice_points_in_polytope(sp.vertices)) {
    sp.points.push_back(p.x);
    sp.interior.push_back(p.interior);
  }
  return sp;
}

Cone moment_cone(const Fan& f) {
  if (f.cones.size() != 1) throw InvalidFan("moment cone needs a single maximal cone");
  return Cone{f.dim, dual_cone(f.cones[0].generators, f.dim)};
}

DelzantData delzant_matrices(const Fan& f) {
  std::vector<IntVec> rays = f.rays();
  IntMatrix a = IntMatrix::from_cols(rays);
  std::vector<IntVec> ker = integer_kernel_basis(a);
  DelzantData d{a, IntMatrix::from_cols(ker)};
  if (!ker.empty()) {
    IntMatrix prod = a * d.b;
    for (int r = 0; r < prod.rows(); ++r)
      for (int c = 0; c < prod.cols(); ++c)
        if (prod.at(r, c) != 0) throw std::logic_error("kernel basis failed a*b == 0");
  }
  return d;
}

}  // namespace crepant
