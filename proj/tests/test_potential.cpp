#include <doctest.h>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <vector>

#include "crepant/errors.hpp"
#include "crepant/potential.hpp"

using namespace crepant;

namespace {

using F50 = boost::multiprecision::cpp_bin_float_50;

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

Fan affine3() { return single_cone(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}); }

Fan kcp2() { return single_cone(3, {iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, -1, 1})}); }

Fan conifold() {
  return single_cone(3, {iv({0, 0, 1}), iv({1, 0, 1}), iv({1, 1, 1}), iv({0, 1, 1})});
}

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

RefinedFan resolve(const Fan& f) {
  GorensteinData g = *gorenstein_vector(f);
  SlicePolytope sp = slice_polytope(f, g);
  return refine_fan(f, sp, triangulate_basic(sp));
}

Eigen::MatrixXd fd_hessian(const ConePotentialData& d, const Eigen::VectorXd& y) {
  int n = d.n;
  double h = 1e-4 * std::max(1.0, y.lpNorm<Eigen::Infinity>());
  Eigen::MatrixXd fd(n, n);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd yp = y, ym = y;
    yp(j) += h;
    ym(j) -= h;
    fd.col(j) = (canonical_gradient(d, yp) - canonical_gradient(d, ym)) / (2 * h);
  }
  return 0.5 * (fd + fd.transpose());
}

}  // namespace

TEST_CASE("flat space potential has the closed form") {
  ConePotentialData d = make_cone_potential(affine3(), vec3(1, 1, 1));
  Eigen::VectorXd y = vec3(0.5, 2.0, 3.0);

  double expected = 0;
  for (int i = 0; i < 3; ++i) expected += 0.5 * y(i) * std::log(y(i));
  CHECK(canonical_potential(d, y) == doctest::Approx(expected).epsilon(1e-15));

  Eigen::VectorXd g = canonical_gradient(d, y);
  for (int i = 0; i < 3; ++i)
    CHECK(g(i) == doctest::Approx(0.5 * (std::log(y(i)) + 1)).epsilon(1e-14));

  Eigen::MatrixXd h = canonical_hessian(d, y);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double want = i == j ? 0.5 / y(i) : 0.0;
      CHECK(h(i, j) == doctest::Approx(want).epsilon(1e-14));
    }

  CHECK(reeb_identity_residual(d, y) < 1e-14);
}

TEST_CASE("potential agrees with a 50-digit reference evaluation") {
  Fan f = kcp2();
  ConePotentialData d = make_cone_potential(f, vec3(0, 0, 3));
  // y = (3/7, 2/5, 1), strictly inside the dual cone
  Eigen::VectorXd y = vec3(3.0 / 7.0, 2.0 / 5.0, 1.0);

  std::vector<std::vector<long>> u = {{1, 0, 1}, {0, 1, 1}, {-1, -1, 1}};
  std::vector<F50> yy = {F50(y(0)), F50(y(1)), F50(y(2))};
  std::vector<F50> xi = {0, 0, 3};
  std::vector<F50> usum = {0, 0, 3};

  std::vector<F50> l(3, F50(0));
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) l[k] += u[k][i] * yy[i];
  F50 lxi = 3 * yy[2];
  F50 linf = l[0] + l[1] + l[2];

  F50 g50 = lxi * log(lxi) / 2 - linf * log(linf) / 2;
  for (int k = 0; k < 3; ++k) g50 += l[k] * log(l[k]) / 2;
  CHECK(canonical_potential(d, y) ==
        doctest::Approx(static_cast<double>(g50)).epsilon(1e-13));

  for (int i = 0; i < 3; ++i) {
    F50 gi = xi[i] * (log(lxi) + 1) / 2 - usum[i] * (log(linf) + 1) / 2;
    for (int k = 0; k < 3; ++k) gi += u[k][i] * (log(l[k]) + 1) / 2;
    CHECK(canonical_gradient(d, y)(i) ==
          doctest::Approx(static_cast<double>(gi)).epsilon(1e-13));
  }

  Eigen::MatrixXd h = canonical_hessian(d, y);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      F50 hij = xi[i] * xi[j] / lxi - usum[i] * usum[j] / linf;
      for (int k = 0; k < 3; ++k) hij += F50(u[k][i] * u[k][j]) / l[k];
      hij /= 2;
      CHECK(h(i, j) == doctest::Approx(static_cast<double>(hij)).epsilon(1e-12));
    }
}

TEST_CASE("gradient and hessian match finite differences") {
  for (auto [fan, xi] : {std::pair{kcp2(), vec3(0, 0, 3)},
                         std::pair{conifold(), vec3(1.5, 1.5, 3)}}) {
    ConePotentialData d = make_cone_potential(fan, xi);
    InteriorSampler s = make_cone_sampler(d, 7);
    for (int t = 0; t < 3; ++t) {
      Eigen::VectorXd y = s.next();
      double h = 1e-5 * std::max(1.0, y.lpNorm<Eigen::Infinity>());
      Eigen::VectorXd g = canonical_gradient(d, y);
      for (int j = 0; j < 3; ++j) {
        Eigen::VectorXd yp = y, ym = y;
        yp(j) += h;
        ym(j) -= h;
        double fdg = (canonical_potential(d, yp) - canonical_potential(d, ym)) / (2 * h);
        CHECK(std::abs(fdg - g(j)) < 1e-7 * std::max(1.0, std::abs(g(j))));
      }
      Eigen::MatrixXd hess = canonical_hessian(d, y);
      CHECK((fd_hessian(d, y) - hess).norm() / hess.norm() < 1e-5);
    }
  }
}

TEST_CASE("reeb identity holds at sampled interior points") {
  for (auto [fan, xi] : {std::pair{kcp2(), vec3(0, 0, 3)},
                         std::pair{conifold(), vec3(1.5, 1.5, 3)},
                         std::pair{affine3(), vec3(1, 2, 3)}}) {
    ConePotentialData d = make_cone_potential(fan, xi);
    InteriorSampler s = make_cone_sampler(d, 99);
    for (int t = 0; t < 25; ++t) CHECK(reeb_identity_residual(d, s.next()) < 1e-12);
  }
}

TEST_CASE("homogeneity of the potential and its hessian") {
  ConePotentialData d = make_cone_potential(kcp2(), vec3(0, 0, 3));
  Eigen::VectorXd y = vec3(0.25, -0.125, 1.0);
  double gy = canonical_potential(d, y);
  double lxi = d.xi.dot(y);
  Eigen::MatrixXd hy = canonical_hessian(d, y);
  for (double t : {2.0, 10.0, 0.5}) {
    // G(ty) = t G(y) + (t log t / 2) l_xi(y)
    double gt = canonical_potential(d, (t * y).eval());
    CHECK(gt == doctest::Approx(t * gy + 0.5 * t * std::log(t) * lxi).epsilon(1e-13));
    // Hessian is homogeneous of degree -1
    Eigen::MatrixXd ht = canonical_hessian(d, (t * y).eval());
    CHECK((t * ht - hy).norm() / hy.norm() < 1e-13);
  }

  std::vector<Eigen::VectorXd> seq;
  InteriorSampler s = make_cone_sampler(d, 3);
  for (int t = 0; t < 10; ++t) seq.push_back(s.next());
  DetStructureReport rep = det_structure_check(d, seq);
  CHECK(rep.scaling_err_2 < 1e-12);
  CHECK(rep.scaling_err_10 < 1e-12);
  CHECK(rep.product_positive);
  CHECK(rep.product_min > 0);
  CHECK(rep.product_max >= rep.product_min);
}

TEST_CASE("legendre transform identities") {
  for (auto [fan, xi] : {std::pair{kcp2(), vec3(0, 0, 3)},
                         std::pair{conifold(), vec3(1.5, 1.5, 3)}}) {
    ConePotentialData d = make_cone_potential(fan, xi);
    InteriorSampler s = make_cone_sampler(d, 5);
    for (int t = 0; t < 4; ++t) {
      LegendreReport rep = legendre_check(d, s.next());
      CHECK(rep.identity_rel_err < 1e-13);
      CHECK(rep.duality_rel_err < 1e-4);
    }
  }
}

TEST_CASE("potential is midpoint convex") {
  for (auto [fan, xi] : {std::pair{kcp2(), vec3(0, 0, 3)},
                         std::pair{conifold(), vec3(1.5, 1.5, 3)}}) {
    ConePotentialData d = make_cone_potential(fan, xi);
    InteriorSampler s = make_cone_sampler(d, 0x5eed);
    for (int t = 0; t < 50; ++t) {
      Eigen::VectorXd a = s.next(), b = s.next();
      double lhs = canonical_potential(d, (0.5 * (a + b)).eval());
      double rhs = 0.5 * (canonical_potential(d, a) + canonical_potential(d, b));
      CHECK(lhs <= rhs + 1e-12);
    }
  }
}

TEST_CASE("domain guards") {
  Fan f = kcp2();
  ConePotentialData d = make_cone_potential(f, vec3(0, 0, 3));
  CHECK_THROWS_AS(canonical_potential(d, vec3(0, 0, 0)), OutsideCone);
  CHECK_THROWS_AS(canonical_potential(d, vec3(5, 5, 1)), OutsideCone);
  CHECK_THROWS_AS(canonical_gradient(d, vec3(0, 0, -1)), OutsideCone);
  CHECK_THROWS_AS(canonical_hessian(d, vec3(0, 0, -1)), OutsideCone);
  // xi on (or past) the boundary of the dual cone is rejected up front
  CHECK_THROWS_AS(make_cone_potential(f, vec3(1, 0, 0)), OutsideReebCone);
  CHECK_THROWS_AS(make_cone_potential(f, vec3(0, 0, -3)), OutsideReebCone);
}

TEST_CASE("interior sampler is deterministic and stays strictly inside") {
  ConePotentialData d = make_cone_potential(conifold(), vec3(1.5, 1.5, 3));
  InteriorSampler a = make_cone_sampler(d, 42);
  InteriorSampler b = make_cone_sampler(d, 42);
  InteriorSampler c = make_cone_sampler(d, 43);
  bool any_differs = false;
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd ya = a.next();
    CHECK(ya == b.next());  // bitwise
    if (ya != c.next()) any_differs = true;
    CHECK(((d.u * ya).array() > 0).all());
  }
  CHECK(any_differs);
}

TEST_CASE("resolved potential has the expected closed forms") {
  // smooth cone, zero heights: the log terms vanish entirely
  RefinedFan flat = resolve(affine3());
  SupportFunction zero = support_from_heights(flat, RatVec(flat.rays.size(), Rat(0)));
  ResolvedPotentialData r0 = make_resolved_potential(flat, zero);
  Eigen::VectorXd y = vec3(0.3, 0.7, 2.0);
  CHECK(guillemin_potential(r0, y) == doctest::Approx(y.sum()).epsilon(1e-15));

  // resolved anticanonical cone with its compact class; on the axis y=(0,0,t)
  // all boundary slacks are t and the apex slack is t + 1/3, so
  //   G(0,0,t) = 4t - (1/3) log(t + 1/3)
  RefinedFan rf = resolve(kcp2());
  SupportFunction h = find_compact_support(rf)->h;
  ResolvedPotentialData r = make_resolved_potential(rf, h);
  for (double t : {0.5, 1.0, 2.0}) {
    double want = 4 * t - std::log(t + 1.0 / 3.0) / 3.0;
    CHECK(guillemin_potential(r, vec3(0, 0, t)) == doctest::Approx(want).epsilon(1e-14));
  }
  CHECK_THROWS_AS(guillemin_potential(r, vec3(2, 0, 1)), OutsideDomain);

  InteriorSampler s = make_resolved_sampler(r, 11);
  for (int t = 0; t < 4; ++t) {
    ResolvedMetricReport rep = resolved_metric_check(r, s.next());
    CHECK(rep.positive_definite);
    CHECK(rep.duality_rel_err < 1e-4);
  }
}
