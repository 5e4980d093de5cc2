#pragma once

#include <Eigen/Dense>

#include "suballoc/problem.hpp"

namespace suballoc {

/// Centralized optimum of the scalar family with a KKT certificate:
/// x_i = max(0, alpha_i - mu d_i), mu >= 0, d^T x <= R, mu (d^T x - R) = 0.
struct KktCertificate {
  Eigen::VectorXd x_star;
  double mu_star = 0.0;
  double stationarity = 0.0;     // max_i |x_i - clip(alpha_i - mu d_i)|
  double primal_violation = 0.0; // max(0, d^T x - R) and box violation
  double complementarity = 0.0;  // |mu (d^T x - R)|
};

/// Exact breakpoint solver for min 1/2||x - alpha||^2 s.t. x >= 0,
/// d^T x <= R. Throws UnsupportedFormError outside the scalar family.
KktCertificate solve_centralized_qp(const QuadraticAffineProblem& prob);

/// Projected-gradient fallback oracle, step 1/kappa_f, stopped on the
/// projection fixed-point residual. Independent cross-check of the
/// breakpoint route through the iterative path.
KktCertificate solve_centralized_pg(const QuadraticAffineProblem& prob,
                                    double tol, int max_iter = 100000);

/// Exact Euclidean projection onto X = {x >= 0, d^T x <= R}.
Eigen::VectorXd project_X(const QuadraticAffineProblem& prob,
                          const Eigen::VectorXd& y);

/// Solves sum_i d_i max(0, c_i - mu d_i) = R for mu >= 0 by sorting the
/// breakpoints c_i/d_i; exact on the active segment. Requires
/// sum_i d_i max(0, c_i) > R (otherwise the answer is mu = 0, handled
/// by callers).
double breakpoint_multiplier(const Eigen::VectorXd& c,
                             const Eigen::VectorXd& d, double R);

}  // namespace suballoc
