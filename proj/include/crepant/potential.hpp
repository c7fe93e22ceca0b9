#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "crepant/fan.hpp"
#include "crepant/kclass.hpp"
#include "crepant/resolve.hpp"

namespace crepant {

// Double-precision view of a cone for potential evaluation: facet normals of
// the dual description (= the fan's ray generators) and the extreme rays of
// the cone the points y live in.
struct ConePotentialData {
  int n = 0;
  Eigen::MatrixXd u;   // d x n, rows are facet normals u_k
  Eigen::MatrixXd v;   // r x n, rows are the cone's extreme rays
  Eigen::VectorXd xi;  // <xi, v_row> > 0 for every row of v (checked)
  Eigen::VectorXd u_sum;
};

// Builds the data from a single-cone fan; xi must be strictly admissible.
ConePotentialData make_cone_potential(const Fan& f, const Eigen::VectorXd& xi);

double canonical_potential(const ConePotentialData& d, const Eigen::VectorXd& y);
Eigen::VectorXd canonical_gradient(const ConePotentialData& d, const Eigen::VectorXd& y);
Eigen::MatrixXd canonical_hessian(const ConePotentialData& d, const Eigen::VectorXd& y);

// max_i |2 (G'' y)_i - xi_i|
double reeb_identity_residual(const ConePotentialData& d, const Eigen::VectorXd& y);

struct DetStructureReport {
  double scaling_err_2 = 0;   // relative error of det(G''(2y)) * 2^n vs det(G''(y))
  double scaling_err_10 = 0;  // same at t = 10
  bool product_positive = false;
  double product_min = 0;  // min/max of det(G'') * prod l_k along the sequence
  double product_max = 0;
};

DetStructureReport det_structure_check(const ConePotentialData& d,
                                       const std::vector<Eigen::VectorXd>& y_sequence);

struct LegendreReport {
  double identity_rel_err = 0;  // |2F - l_xi| / |l_xi| with F = <grad G, y> - G
  double duality_rel_err = 0;   // FD Hessian of the dual potential vs inverse Hessian
};

LegendreReport legendre_check(const ConePotentialData& d, const Eigen::VectorXd& y);

// Resolved-cone data: all N rays of a refinement plus the class heights.
struct ResolvedPotentialData {
  int n = 0;
  Eigen::MatrixXd u;       // N x n rays
  Eigen::VectorXd lambda;  // heights, 0 on boundary rays
  Eigen::MatrixXd v;       // moment-cone rays of the original cone (for sampling)
};

ResolvedPotentialData make_resolved_potential(const RefinedFan& rf, const SupportFunction& h);

// sum_j lambda_j log(<u_j,y> - lambda_j) + sum_j <u_j,y>
double guillemin_potential(const ResolvedPotentialData& r, const Eigen::VectorXd& y);

struct ResolvedMetricReport {
  bool positive_definite = false;
  double duality_rel_err = 0;
};

// Checks the Hessian of G_h = (1/2) sum l_j log l_j at y: positive definite,
// and Legendre Hessian duality by finite differences.
ResolvedMetricReport resolved_metric_check(const ResolvedPotentialData& r,
                                           const Eigen::VectorXd& y);

// Deterministic interior sampler: convex combination of the rows of `rays`
// with weights in [0.05, 1], pushed along the ray sum until every facet slack
// <normal_k, y> - offset_k clears 1e-3 times the facet normal's length.
class InteriorSampler {
 public:
  InteriorSampler(Eigen::MatrixXd rays, Eigen::MatrixXd normals, Eigen::VectorXd offsets,
                  std::uint64_t seed);

  Eigen::VectorXd next();

 private:
  double unit();  // uniform in [0,1), identical across platforms

  Eigen::MatrixXd rays_, normals_;
  Eigen::VectorXd offsets_;
  std::uint64_t state_;
};

InteriorSampler make_cone_sampler(const ConePotentialData& d, std::uint64_t seed);
InteriorSampler make_resolved_sampler(const ResolvedPotentialData& r, std::uint64_t seed);

}  // namespace crepant
