#include "crepant/reeb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crepant/errors.hpp"
#include "crepant/intmat.hpp"
#include "crepant/polyhedra.hpp"

namespace crepant {

namespace {

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

ReebProblem make_reeb_problem(const Fan& f, const GorensteinData& g, int apex) {
  int n = f.dim;
  if (n < 2 || n > 3) throw DimensionUnsupported("volume decomposition supports n = 2, 3");
  ReebProblem p;
  p.n = n;

  std::vector<IntVec> rays = moment_cone(f).generators;
  int nr = static_cast<int>(rays.size());
  if (apex < 0 || apex >= nr) throw InvalidParameters("apex index out of range");
  p.v.resize(nr, n);
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < n; ++c) p.v(r, c) = static_cast<double>(rays[r][c]);

  if (n == 2) {
    if (nr != 2) throw std::logic_error("2d moment cone must have two rays");
    p.simplices.push_back({0, 1});
  } else {
    // facets of the moment cone pair to zero against one fan generator; cone
    // each facet not containing the apex ray to the apex
    for (const IntVec& u : f.rays()) {
      std::vector<int> on_facet;
      for (int r = 0; r < nr; ++r)
        if (dot(u, rays[r]) == 0) on_facet.push_back(r);
      if (on_facet.size() != 2) throw std::logic_error("moment cone facet without two rays");
      if (on_facet[0] == apex || on_facet[1] == apex) continue;
      p.simplices.push_back({apex, on_facet[0], on_facet[1]});
    }
  }

  for (const std::vector<int>& s : p.simplices) {
    std::vector<IntVec> vs;
    for (int idx : s) vs.push_back(rays[idx]);
    Int det = IntMatrix::from_rows(vs).det();
    if (det == 0) throw std::logic_error("degenerate simplex in volume decomposition");
    p.weights.push_back(static_cast<double>(boost::multiprecision::abs(det)) /
                        (std::pow(2.0, n) * factorial(n)));
  }

  p.gamma.resize(n);
  for (int i = 0; i < n; ++i) p.gamma(i) = static_cast<double>(g.gamma[i]);

  IntVec gamma_int(n);
  for (int i = 0; i < n; ++i) {
    if (boost::multiprecision::denominator(g.gamma[i]) != 1)
      throw NonIntegralGamma("volume minimization needs an integral gamma");
    gamma_int[i] = boost::multiprecision::numerator(g.gamma[i]);
  }
  std::vector<IntVec> ker = integer_kernel_basis(IntMatrix::from_rows({gamma_int}));
  p.tangent.resize(n, n - 1);
  for (int j = 0; j < n - 1; ++j)
    for (int i = 0; i < n; ++i) p.tangent(i, j) = static_cast<double>(ker[j][i]);

  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (const IntVec& u : f.rays())
    for (int i = 0; i < n; ++i) c(i) += static_cast<double>(u[i]);
  double gc = p.gamma.dot(c);
  p.xi0 = (-n / gc) * c;
  if (((p.v * p.xi0).array() <= 0).any())
    throw std::logic_error("generator sum start point is not admissible");
  return p;
}

namespace {

Eigen::VectorXd pairings(const ReebProblem& p, const Eigen::VectorXd& xi) {
  Eigen::VectorXd d = p.v * xi;
  if ((d.array() <= 0).any())
    throw OutsideReebCone("xi pairs nonpositively with a moment-cone ray");
  return d;
}

}  // namespace

double reeb_volume(const ReebProblem& p, const Eigen::VectorXd& xi) {
  Eigen::VectorXd d = pairings(p, xi);
  double vol = 0;
  for (std::size_t s = 0; s < p.simplices.size(); ++s) {
    double prod = 1;
    for (int idx : p.simplices[s]) prod *= d(idx);
    vol += p.weights[s] / prod;
  }
  return vol;
}

Eigen::VectorXd reeb_volume_gradient(const ReebProblem& p, const Eigen::VectorXd& xi) {
  Eigen::VectorXd d = pairings(p, xi);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(p.n);
  for (std::size_t s = 0; s < p.simplices.size(); ++s) {
    double prod = 1;
    for (int idx : p.simplices[s]) prod *= d(idx);
    double vs = p.weights[s] / prod;
    for (int idx : p.simplices[s]) g -= vs / d(idx) * p.v.row(idx).transpose();
  }
  return g;
}

Eigen::MatrixXd reeb_volume_hessian(const ReebProblem& p, const Eigen::VectorXd& xi) {
  Eigen::VectorXd d = pairings(p, xi);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p.n, p.n);
  for (std::size_t s = 0; s < p.simplices.size(); ++s) {
    double prod = 1;
    for (int idx : p.simplices[s]) prod *= d(idx);
    double vs = p.weights[s] / prod;
    Eigen::VectorXd a = Eigen::VectorXd::Zero(p.n);
    for (int idx : p.simplices[s]) {
      a += p.v.row(idx).transpose() / d(idx);
      h += vs / (d(idx) * d(idx)) * p.v.row(idx).transpose() * p.v.row(idx);
    }
    h += vs * a * a.transpose();
  }
  return h;
}

MonteCarloVolume monte_carlo_volume(const ReebProblem& p, const Eigen::VectorXd& xi,
                                    std::uint64_t samples, std::uint64_t seed) {
  Eigen::VectorXd d = pairings(p, xi);
  // bounding box of the capped cone: hull of the apex and the ray endpoints
  Eigen::VectorXd lo = Eigen::VectorXd::Zero(p.n), hi = Eigen::VectorXd::Zero(p.n);
  for (Eigen::Index r = 0; r < p.v.rows(); ++r) {
    Eigen::VectorXd e = p.v.row(r).transpose() / (2.0 * d(r));
    lo = lo.cwiseMin(e);
    hi = hi.cwiseMax(e);
  }
  double box_vol = (hi - lo).prod();

  // membership in the cone == membership in one of its simplicial pieces
  std::uint64_t state = seed;
  auto unit = [&state]() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  };

  // precompute per-simplex inverse matrices for barycentric membership
  std::vector<Eigen::MatrixXd> inv;
  for (const std::vector<int>& s : p.simplices) {
    Eigen::MatrixXd m(p.n, p.n);
    for (int c = 0; c < p.n; ++c) m.col(c) = p.v.row(s[c]).transpose();
    inv.push_back(m.inverse());
  }

  std::uint64_t hits = 0;
  Eigen::VectorXd y(p.n);
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (int c = 0; c < p.n; ++c) y(c) = lo(c) + (hi(c) - lo(c)) * unit();
    if (xi.dot(y) > 0.5) continue;
    for (const Eigen::MatrixXd& m : inv) {
      if (((m * y).array() >= 0).all()) {
        ++hits;
        break;
      }
    }
  }
  double frac = static_cast<double>(hits) / static_cast<double>(samples);
  MonteCarloVolume mc;
  mc.estimate = frac * box_vol;
  mc.standard_error = box_vol * std::sqrt(frac * (1 - frac) / static_cast<double>(samples));
  mc.samples = samples;
  return mc;
}

namespace {

struct NewtonRun {
  Eigen::VectorXd xi;
  double volume = 0, gradient_norm = 0;
  int iterations = 0;
};

NewtonRun newton_on_plane(const ReebProblem& p, const Eigen::VectorXd& t_init) {
  const Eigen::MatrixXd& tb = p.tangent;
  Eigen::VectorXd t = t_init;
  auto xi_of = [&](const Eigen::VectorXd& tv) { return (p.xi0 + tb * tv).eval(); };
  auto inside = [&](const Eigen::VectorXd& tv) {
    return ((p.v * xi_of(tv)).array() > 0).all();
  };
  if (!inside(t)) throw DidNotConverge("initial point is not admissible");

  NewtonRun run;
  double vol = reeb_volume(p, xi_of(t));
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd xi = xi_of(t);
    Eigen::VectorXd g = tb.transpose() * reeb_volume_gradient(p, xi);
    run.gradient_norm = g.norm();
    run.iterations = it;
    if (run.gradient_norm < 1e-12) {
      run.xi = xi;
      run.volume = vol;
      return run;
    }
    Eigen::MatrixXd h = tb.transpose() * reeb_volume_hessian(p, xi) * tb;
    Eigen::VectorXd step = h.llt().solve(-g);
    double alpha = 1.0;
    double slope = g.dot(step);
    while (alpha > 1e-18) {
      Eigen::VectorXd tn = t + alpha * step;
      if (inside(tn)) {
        double vn = reeb_volume(p, xi_of(tn));
        if (vn <= vol + 1e-4 * alpha * slope) {
          t = tn;
          vol = vn;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (alpha <= 1e-18) throw DidNotConverge("line search failed");
  }
  throw DidNotConverge("newton iteration cap reached");
}

}  // namespace

ReebSolution minimize_volume(const ReebProblem& p) {
  int m = p.n - 1;
  NewtonRun base = newton_on_plane(p, Eigen::VectorXd::Zero(m));

  double scale = p.xi0.norm();
  std::vector<Eigen::VectorXd> starts;
  for (int k = 0; k < 4; ++k) {
    Eigen::VectorXd t = Eigen::VectorXd::Zero(m);
    t(k % m) = (k < 2 ? 1.0 : -1.0) * 0.05 * scale * (1 + k);
    starts.push_back(t);
  }
  for (Eigen::VectorXd t : starts) {
    // shrink infeasible perturbations toward the admissible base start
    for (int tries = 0; tries < 60 && ((p.v * (p.xi0 + p.tangent * t)).array() <= 0).any();
         ++tries)
      t *= 0.5;
    NewtonRun r = newton_on_plane(p, t);
    double tol = 1e-9 * std::max(1.0, base.xi.lpNorm<Eigen::Infinity>());
    if ((r.xi - base.xi).lpNorm<Eigen::Infinity>() > tol)
      throw DidNotConverge("restarts disagree beyond 1e-9");
  }

  ReebSolution sol;
  sol.xi = base.xi;
  sol.volume = base.volume;
  sol.gradient_norm = base.gradient_norm;
  sol.iterations = base.iterations;
  Eigen::MatrixXd h = p.tangent.transpose() * reeb_volume_hessian(p, base.xi) * p.tangent;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  sol.hessian_min_eigenvalue = es.eigenvalues().minCoeff();
  sol.gamma_pairing = p.gamma.dot(base.xi);
  double margin = 0;
  for (Eigen::Index r = 0; r < p.v.rows(); ++r) {
    double m_r = p.v.row(r).dot(base.xi) / p.v.row(r).norm();
    margin = r == 0 ? m_r : std::min(margin, m_r);
  }
  sol.cone_margin = margin;
  return sol;
}

}  // namespace crepant
