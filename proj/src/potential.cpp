#include "crepant/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "crepant/errors.hpp"

namespace crepant {

namespace {

Eigen::MatrixXd to_matrix(const std::vector<IntVec>& rows) {
  Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          static_cast<double>(rows[r][c]);
  return m;
}

Eigen::VectorXd slacks_or_throw(const Eigen::MatrixXd& u, const Eigen::VectorXd& offsets,
                                const Eigen::VectorXd& y, const char* what) {
  Eigen::VectorXd l = u * y - offsets;
  if ((l.array() <= 0).any()) {
    if (std::string(what) == "cone") throw OutsideCone("point is not strictly inside the cone");
    throw OutsideDomain("point is not strictly inside the domain");
  }
  return l;
}

// Newton inversion of a strictly convex potential's gradient map, with step
// halving to stay inside the domain (`inside` must be fast and total).
template <class Grad, class Hess, class Inside>
Eigen::VectorXd invert_gradient(const Grad& grad, const Hess& hess, const Inside& inside,
                                const Eigen::VectorXd& target, Eigen::VectorXd y) {
  double scale = std::max(1.0, target.template lpNorm<Eigen::Infinity>());
  for (int it = 0; it < 80; ++it) {
    Eigen::VectorXd r = grad(y) - target;
    if (r.template lpNorm<Eigen::Infinity>() < 1e-13 * scale) return y;
    Eigen::VectorXd step = hess(y).ldlt().solve(-r);
    double alpha = 1.0;
    while (alpha > 1e-14 && !inside(y + alpha * step)) alpha *= 0.5;
    if (alpha <= 1e-14) throw DidNotConverge("gradient inversion step collapsed");
    y += alpha * step;
  }
  throw DidNotConverge("gradient inversion did not reach tolerance");
}

}  // namespace

ConePotentialData make_cone_potential(const Fan& f, const Eigen::VectorXd& xi) {
  ConePotentialData d;
  d.n = f.dim;
  d.u = to_matrix(f.rays());
  d.v = to_matrix(moment_cone(f).generators);
  d.xi = xi;
  d.u_sum = d.u.colwise().sum().transpose();
  if (((d.v * xi).array() <= 0).any())
    throw OutsideReebCone("xi is not strictly inside the dual cone");
  return d;
}

double canonical_potential(const ConePotentialData& d, const Eigen::VectorXd& y) {
  Eigen::VectorXd l = slacks_or_throw(d.u, Eigen::VectorXd::Zero(d.u.rows()), y, "cone");
  double lxi = d.xi.dot(y);
  if (lxi <= 0) throw OutsideCone("l_xi is not positive");
  double linf = l.sum();
  double g = 0.5 * (l.array() * l.array().log()).sum();
  return g + 0.5 * lxi * std::log(lxi) - 0.5 * linf * std::log(linf);
}

Eigen::VectorXd canonical_gradient(const ConePotentialData& d, const Eigen::VectorXd& y) {
  Eigen::VectorXd l = slacks_or_throw(d.u, Eigen::VectorXd::Zero(d.u.rows()), y, "cone");
  double lxi = d.xi.dot(y);
  if (lxi <= 0) throw OutsideCone("l_xi is not positive");
  double linf = l.sum();
  Eigen::VectorXd g = 0.5 * d.u.transpose() * (l.array().log() + 1).matrix();
  g += 0.5 * (std::log(lxi) + 1) * d.xi;
  g -= 0.5 * (std::log(linf) + 1) * d.u_sum;
  return g;
}

Eigen::MatrixXd canonical_hessian(const ConePotentialData& d, const Eigen::VectorXd& y) {
  Eigen::VectorXd l = slacks_or_throw(d.u, Eigen::VectorXd::Zero(d.u.rows()), y, "cone");
  double lxi = d.xi.dot(y);
  if (lxi <= 0) throw OutsideCone("l_xi is not positive");
  double linf = l.sum();
  Eigen::MatrixXd h = d.u.transpose() * l.array().inverse().matrix().asDiagonal() * d.u;
  h += d.xi * d.xi.transpose() / lxi;
  h -= d.u_sum * d.u_sum.transpose() / linf;
  return 0.5 * h;
}

double reeb_identity_residual(const ConePotentialData& d, const Eigen::VectorXd& y) {
  Eigen::VectorXd r = 2.0 * canonical_hessian(d, y) * y - d.xi;
  return r.lpNorm<Eigen::Infinity>();
}

DetStructureReport det_structure_check(const ConePotentialData& d,
                                       const std::vector<Eigen::VectorXd>& y_sequence) {
  if (y_sequence.empty()) throw std::invalid_argument("empty sequence");
  DetStructureReport rep;
  const Eigen::VectorXd& y0 = y_sequence.front();
  double det0 = canonical_hessian(d, y0).determinant();
  for (double t : {2.0, 10.0}) {
    double dett = canonical_hessian(d, (t * y0).eval()).determinant();
    double err = std::abs(dett * std::pow(t, d.n) - det0) / std::abs(det0);
    (t == 2.0 ? rep.scaling_err_2 : rep.scaling_err_10) = err;
  }
  rep.product_positive = true;
  for (std::size_t i = 0; i < y_sequence.size(); ++i) {
    const Eigen::VectorXd& y = y_sequence[i];
    Eigen::VectorXd l = slacks_or_throw(d.u, Eigen::VectorXd::Zero(d.u.rows()), y, "cone");
    double prod = canonical_hessian(d, y).determinant();
    for (Eigen::Index k = 0; k < l.size(); ++k) prod *= l(k);
    if (prod <= 0) rep.product_positive = false;
    if (i == 0) {
      rep.product_min = rep.product_max = prod;
    } else {
      rep.product_min = std::min(rep.product_min, prod);
      rep.product_max = std::max(rep.product_max, prod);
    }
  }
  return rep;
}

LegendreReport legendre_check(const ConePotentialData& d, const Eigen::VectorXd& y) {
  LegendreReport rep;
  Eigen::VectorXd x = canonical_gradient(d, y);
  double f = x.dot(y) - canonical_potential(d, y);
  double lxi = d.xi.dot(y);
  rep.identity_rel_err = std::abs(2.0 * f - lxi) / std::abs(lxi);

  auto grad = [&](const Eigen::VectorXd& p) { return canonical_gradient(d, p); };
  auto hess = [&](const Eigen::VectorXd& p) { return canonical_hessian(d, p); };
  auto inside = [&](const Eigen::VectorXd& p) {
    return ((d.u * p).array() > 0).all() && d.xi.dot(p) > 0;
  };

  Eigen::MatrixXd hinv = canonical_hessian(d, y).inverse();
  Eigen::MatrixXd fd(d.n, d.n);
  double h = 1e-5 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
  for (int j = 0; j < d.n; ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    Eigen::VectorXd yp = invert_gradient(grad, hess, inside, xp, y);
    Eigen::VectorXd ym = invert_gradient(grad, hess, inside, xm, y);
    fd.col(j) = (yp - ym) / (2.0 * h);
  }
  rep.duality_rel_err = (fd - hinv).norm() / hinv.norm();
  return rep;
}

ResolvedPotentialData make_resolved_potential(const RefinedFan& rf, const SupportFunction& h) {
  ResolvedPotentialData r;
  r.n = rf.dim;
  r.u = to_matrix(rf.rays);
  r.lambda.resize(rf.rays.size());
  for (std::size_t i = 0; i < rf.rays.size(); ++i) {
    if (!rf.ray_interior[i] && h.heights[i] != 0)
      throw NotCompact("height data does not vanish on the boundary");
    r.lambda(static_cast<Eigen::Index>(i)) = static_cast<double>(h.heights[i]);
  }
  r.v = to_matrix(dual_cone(rf.original.generators, rf.dim));
  return r;
}

double guillemin_potential(const ResolvedPotentialData& r, const Eigen::VectorXd& y) {
  Eigen::VectorXd l = slacks_or_throw(r.u, r.lambda, y, "domain");
  double s = (r.u * y).sum();
  for (Eigen::Index j = 0; j < l.size(); ++j)
    if (r.lambda(j) != 0) s += r.lambda(j) * std::log(l(j));
  return s;
}

ResolvedMetricReport resolved_metric_check(const ResolvedPotentialData& r,
                                           const Eigen::VectorXd& y) {
  ResolvedMetricReport rep;
  auto hess = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd l = slacks_or_throw(r.u, r.lambda, p, "domain");
    Eigen::MatrixXd h = r.u.transpose() * l.array().inverse().matrix().asDiagonal() * r.u;
    return (0.5 * h).eval();
  };
  auto grad = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd l = slacks_or_throw(r.u, r.lambda, p, "domain");
    return (0.5 * r.u.transpose() * (l.array().log() + 1).matrix()).eval();
  };
  auto inside = [&](const Eigen::VectorXd& p) {
    return ((r.u * p - r.lambda).array() > 0).all();
  };

  Eigen::MatrixXd hy = hess(y);
  Eigen::LLT<Eigen::MatrixXd> llt(hy);
  rep.positive_definite = llt.info() == Eigen::Success;
  if (!rep.positive_definite) return rep;

  Eigen::VectorXd x = grad(y);
  Eigen::MatrixXd hinv = hy.inverse();
  Eigen::MatrixXd fd(r.n, r.n);
  double h = 1e-5 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
  for (int j = 0; j < r.n; ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    Eigen::VectorXd yp = invert_gradient(grad, hess, inside, xp, y);
    Eigen::VectorXd ym = invert_gradient(grad, hess, inside, xm, y);
    fd.col(j) = (yp - ym) / (2.0 * h);
  }
  rep.duality_rel_err = (fd - hinv).norm() / hinv.norm();
  return rep;
}

InteriorSampler::InteriorSampler(Eigen::MatrixXd rays, Eigen::MatrixXd normals,
                                 Eigen::VectorXd offsets, std::uint64_t seed)
    : rays_(std::move(rays)), normals_(std::move(normals)), offsets_(std::move(offsets)),
      state_(seed) {}

double InteriorSampler::unit() {
  // splitmix64; bit-for-bit reproducible everywhere
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

Eigen::VectorXd InteriorSampler::next() {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rays_.cols());
  for (Eigen::Index k = 0; k < rays_.rows(); ++k)
    y += (0.05 + 0.95 * unit()) * rays_.row(k).transpose();
  Eigen::VectorXd c = rays_.colwise().sum().transpose();
  Eigen::VectorXd nc = normals_ * c;
  Eigen::VectorXd slack = normals_ * y - offsets_;
  double t = 0;
  for (Eigen::Index k = 0; k < normals_.rows(); ++k) {
    double need = 1e-3 * normals_.row(k).norm();
    if (slack(k) < need) t = std::max(t, (need - slack(k)) / nc(k));
  }
  return y + t * c;
}

InteriorSampler make_cone_sampler(const ConePotentialData& d, std::uint64_t seed) {
  return InteriorSampler(d.v, d.u, Eigen::VectorXd::Zero(d.u.rows()), seed);
}

InteriorSampler make_resolved_sampler(const ResolvedPotentialData& r, std::uint64_t seed) {
  return InteriorSampler(r.v, r.u, r.lambda, seed);
}

}  // namespace crepant
