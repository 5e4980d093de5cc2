#include "suballoc/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "suballoc/errors.hpp"
#include "suballoc/oracle.hpp"

namespace suballoc {

Eigen::VectorXd project_orthant(const Eigen::VectorXd& y) {
  return y.cwiseMax(0.0);
}

double vi_residual(const Projector& project, const Eigen::VectorXd& f_value,
                   const Eigen::VectorXd& x) {
  return (project(x - f_value) - x).norm();
}

KronLaplacian KronLaplacian::from(const Laplacian& lap, int p) {
  if (p < 1) throw std::invalid_argument("KronLaplacian: p < 1");
  return KronLaplacian{lap.matrix, lap.spectral_norm, p};
}

Eigen::VectorXd KronLaplacian::apply(const Eigen::VectorXd& z) const {
  const int n = static_cast<int>(L.rows());
  if (z.size() != static_cast<Eigen::Index>(n) * p)
    throw std::invalid_argument("KronLaplacian: dimension mismatch");
  if (p == 1) return L * z;
  Eigen::Map<const Eigen::MatrixXd> zmat(z.data(), p, n);
  Eigen::MatrixXd out = zmat * L.transpose();
  return Eigen::Map<Eigen::VectorXd>(out.data(), out.size());
}

LcpSolution solve_lcp_laplacian(const KronLaplacian& lk,
                                const Eigen::VectorXd& u, double eps,
                                double tol, long max_iter) {
  const int n = static_cast<int>(lk.L.rows());
  if (u.size() != static_cast<Eigen::Index>(n) * lk.p)
    throw std::invalid_argument("solve_lcp_laplacian: dimension mismatch");

  // Feasible iff the per-coordinate block sum of u is <= 0 (1^T L = 0).
  Eigen::VectorXd q = eps * u;
  const double feas_tol = 1e-9 * std::max(1.0, q.cwiseAbs().maxCoeff());
  for (int c = 0; c < lk.p; ++c) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += q(i * lk.p + c);
    if (s > feas_tol)
      throw InfeasibleLcpError("solve_lcp_laplacian: 1^T u > 0");
    if (s > 0.0)  // rounding noise from a boundary x; shift back onto U
      for (int i = 0; i < n; ++i) q(i * lk.p + c) -= s / n;
  }

  const double rho = 1.0 / lk.norm;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(q.size());
  double min_w = 0.0, comp = 0.0;
  for (long it = 0; it <= max_iter; ++it) {
    Eigen::VectorXd w = lk.apply(z) - q;
    min_w = w.minCoeff();
    comp = std::abs(z.dot(w));
    if (min_w >= -tol && comp <= tol)
      return LcpSolution{z, z.minCoeff(), min_w, comp};
    z = (z - rho * w).cwiseMax(0.0);
  }
  throw SolverFailure("solve_lcp_laplacian: iteration cap",
                      std::max(-min_w, comp));
}

std::vector<LcpSolution> lcp_bruteforce(const Eigen::VectorXd& q,
                                        const Eigen::MatrixXd& M) {
  const int m = static_cast<int>(q.size());
  if (m > 20) throw std::invalid_argument("lcp_bruteforce: m > 20");
  const double sign_tol = 1e-10;
  const double eq_tol = 1e-8 * std::max(1.0, q.cwiseAbs().maxCoeff());
  std::vector<LcpSolution> out;
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    std::vector<int> support;
    for (int i = 0; i < m; ++i)
      if (mask & (1UL << i)) support.push_back(i);
    const int k = static_cast<int>(support.size());
    Eigen::VectorXd z = Eigen::VectorXd::Zero(m);
    if (k > 0) {
      Eigen::MatrixXd msub(k, k);
      Eigen::VectorXd qsub(k);
      for (int a = 0; a < k; ++a) {
        qsub(a) = q(support[a]);
        for (int b = 0; b < k; ++b) msub(a, b) = M(support[a], support[b]);
      }
      // Least-norm solution; singular subsystems (the 1-direction ray)
      // thus report their minimal representative.
      Eigen::VectorXd zsub =
          msub.completeOrthogonalDecomposition().solve(-qsub);
      if ((msub * zsub + qsub).cwiseAbs().maxCoeff() > eq_tol) continue;
      for (int a = 0; a < k; ++a) z(support[a]) = zsub(a);
    }
    Eigen::VectorXd w = M * z + q;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      bool in_s = (mask >> i) & 1UL;
      if (in_s && z(i) < -sign_tol) ok = false;
      if (!in_s && w(i) < -sign_tol) ok = false;
    }
    if (!ok) continue;
    bool dup = false;
    for (const auto& sol : out)
      if ((sol.z - z).cwiseAbs().maxCoeff() <= 1e-8) {
        dup = true;
        break;
      }
    if (!dup)
      out.push_back(LcpSolution{z, z.minCoeff(), w.minCoeff(),
                                std::abs(z.dot(w))});
  }
  return out;
}

Eigen::VectorXd solve_g1(const Problem& prob, const Projector& project_feasible,
                         const Eigen::VectorXd& lambda, double tol,
                         int max_iter) {
  const ProblemConstants c = prob.constants();
  const double tau = c.mu_f / (c.kappa_f * c.kappa_f);
  Eigen::VectorXd x =
      project_feasible(Eigen::VectorXd::Zero(prob.primal_dim()));
  double res = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd f = prob.grad_f(x) + prob.eval_v(x, lambda);
    res = vi_residual(project_feasible, f, x);
    if (res <= tol) return x;
    x = project_feasible(x - tau * f);
  }
  throw SolverFailure("solve_g1: iteration cap", res);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> solve_equilibrium_fixed_point(
    const QuadraticAffineProblem& prob, const KronLaplacian& lk, double eps,
    double tol) {
  if (eps <= 0.0)
    throw std::invalid_argument("solve_equilibrium_fixed_point: eps <= 0");
  const Projector proj = [&prob](const Eigen::VectorXd& y) {
    return project_X(prob, y);
  };
  const double inner_tol = std::min(tol * 1e-2, 1e-10);
  const int max_outer = 10000;
  Eigen::VectorXd lambda =
      Eigen::VectorXd::Zero(prob.coupling_dim() * prob.num_agents());
  Eigen::VectorXd x = solve_g1(prob, proj, lambda, inner_tol);
  double prev_step = std::numeric_limits<double>::infinity();
  int growth_streak = 0;
  for (int it = 0; it < max_outer; ++it) {
    lambda = solve_lcp_laplacian(lk, prob.eval_u(x), eps, inner_tol).z;
    Eigen::VectorXd x_next = solve_g1(prob, proj, lambda, inner_tol);
    double step = (x_next - x).norm();
    x = x_next;
    if (step <= tol) {
      // Consensus multiplier shift: lambda + shift*1 turns the auxiliary
      // equilibrium into an equilibrium of the flow (KKT of the perturbed
      // problem, computable in closed form for the scalar family).
      if (prob.is_scalar_family()) {
        Eigen::VectorXd d = prob.demands();
        Eigen::VectorXd alpha_shift =
            prob.alphas() - d.cwiseProduct(lambda);
        double resource = prob.resource();
        double shift = 0.0;
        if (d.dot(alpha_shift.cwiseMax(0.0)) > resource)
          shift = breakpoint_multiplier(alpha_shift, d, resource);
        lambda.array() += shift;
      }
      return {x, lambda};
    }
    if (step > 1e8)
      throw NoContractionError(
          "solve_equilibrium_fixed_point: diverging; reduce eps");
    growth_streak = (step > prev_step * (1.0 + 1e-12)) ? growth_streak + 1 : 0;
    if (growth_streak >= 50)
      throw NoContractionError(
          "solve_equilibrium_fixed_point: no contraction; reduce eps");
    prev_step = step;
  }
  throw SolverFailure("solve_equilibrium_fixed_point: iteration cap",
                      prev_step);
}

}  // namespace suballoc
