#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "suballoc/graph.hpp"
#include "suballoc/problem.hpp"

namespace suballoc {

using Projector = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

Eigen::VectorXd project_orthant(const Eigen::VectorXd& y);

/// ||P(x - F(x)) - x|| for a given projector; zero iff x solves the VI.
double vi_residual(const Projector& project, const Eigen::VectorXd& f_value,
                   const Eigen::VectorXd& x);

/// L (x) I_p applied without forming the Kronecker product.
struct KronLaplacian {
  Eigen::MatrixXd L;
  double norm = 0.0;
  int p = 1;

  static KronLaplacian from(const Laplacian& lap, int p);

  int dim() const { return static_cast<int>(L.rows()) * p; }
  Eigen::VectorXd apply(const Eigen::VectorXd& z) const;
};

struct LcpSolution {
  Eigen::VectorXd z;
  double min_z = 0.0;   // min component of z
  double min_w = 0.0;   // min component of w = M z + q
  double comp = 0.0;    // |z^T w|
};

/// LCP(-eps u, L (x) I_p) by the projected iteration
/// z <- max(0, z - rho (L z - eps u)), rho = 1/||L||, from z = 0.
/// Requires sum over agent blocks of u <= 0 per constraint coordinate;
/// throws InfeasibleLcpError otherwise, SolverFailure on the iteration cap.
LcpSolution solve_lcp_laplacian(const KronLaplacian& lk,
                                const Eigen::VectorXd& u, double eps,
                                double tol, long max_iter = 2000000);

/// Active-set enumeration oracle for LCP(q, M), m <= 20. Singular
/// subsystems take the least-norm representative. Solutions deduplicated
/// within 1e-8.
std::vector<LcpSolution> lcp_bruteforce(const Eigen::VectorXd& q,
                                        const Eigen::MatrixXd& M);

/// Unique solution of VI(X, grad f(.) + v(., lambda)) for lambda >= 0 by
/// the projected fixed-point iteration with step mu_f/kappa_f^2, stopped
/// on the unit-step projection residual.
Eigen::VectorXd solve_g1(const Problem& prob, const Projector& project_feasible,
                         const Eigen::VectorXd& lambda, double tol,
                         int max_iter = 100000);

/// Alternates x <- G1(lambda), lambda <- G2(x) to the fixed point of the
/// auxiliary equilibrium system, then (scalar family) adds the consensus
/// KKT shift so the returned pair is an equilibrium of the flow itself.
/// Throws NoContractionError when the alternation diverges (eps too large).
std::pair<Eigen::VectorXd, Eigen::VectorXd> solve_equilibrium_fixed_point(
    const QuadraticAffineProblem& prob, const KronLaplacian& lk, double eps,
    double tol);

}  // namespace suballoc
