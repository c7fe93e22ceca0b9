#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "crepant/fan.hpp"

namespace crepant {

// Volume minimization data for a Gorenstein cone: the dual (moment) cone
// decomposed into simplicial pieces, the hyperplane <gamma, xi> = -n, and a
// tangent basis of that hyperplane.
struct ReebProblem {
  int n = 0;
  Eigen::MatrixXd v;                        // moment-cone extreme rays, rows
  std::vector<std::vector<int>> simplices;  // index lists into rows of v
  std::vector<double> weights;              // |det| / (2^n n!) per simplex
  Eigen::VectorXd gamma;
  Eigen::VectorXd xi0;      // admissible start on the constraint plane
  Eigen::MatrixXd tangent;  // n x (n-1) integer basis of gamma's kernel
};

// apex selects the decomposition's cone point among the moment-cone rays
// (any choice yields the same volume function; used to test invariance).
ReebProblem make_reeb_problem(const Fan& f, const GorensteinData& g, int apex = 0);

// vol(xi) = sum_s |det V_s| / (n! prod_k 2<xi, v_k>): the Euclidean volume of
// {y in moment cone : <xi, y> <= 1/2}. Throws OutsideReebCone when some
// <xi, v_k> <= 0.
double reeb_volume(const ReebProblem& p, const Eigen::VectorXd& xi);
Eigen::VectorXd reeb_volume_gradient(const ReebProblem& p, const Eigen::VectorXd& xi);
Eigen::MatrixXd reeb_volume_hessian(const ReebProblem& p, const Eigen::VectorXd& xi);

// Deterministic Monte Carlo estimate of the same polytope volume together
// with its standard error.
struct MonteCarloVolume {
  double estimate = 0;
  double standard_error = 0;
  std::uint64_t samples = 0;
};
MonteCarloVolume monte_carlo_volume(const ReebProblem& p, const Eigen::VectorXd& xi,
                                    std::uint64_t samples, std::uint64_t seed);

struct ReebSolution {
  Eigen::VectorXd xi;
  double volume = 0;
  double gradient_norm = 0;  // Euclidean norm of the in-plane gradient
  int iterations = 0;
  double hessian_min_eigenvalue = 0;  // of the in-plane Hessian at xi
  double gamma_pairing = 0;           // <gamma, xi>, must be -n
  double cone_margin = 0;             // min_k <xi, v_k> / |v_k|
};

// Damped Newton on the constraint plane, five perturbed restarts required to
// agree to 1e-9. Throws DidNotConverge on iteration cap or disagreement.
ReebSolution minimize_volume(const ReebProblem& p);

}  // namespace crepant
