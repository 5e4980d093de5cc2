#include "suballoc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "suballoc/errors.hpp"

namespace suballoc {

namespace {

void require_scalar(const QuadraticAffineProblem& prob, const char* where) {
  if (!prob.is_scalar_family())
    throw UnsupportedFormError(std::string(where) +
                               ": requires the scalar 5G family");
}

KktCertificate certify(const Eigen::VectorXd& x, double mu,
                       const Eigen::VectorXd& alpha, const Eigen::VectorXd& d,
                       double resource) {
  KktCertificate c;
  c.x_star = x;
  c.mu_star = mu;
  double coupling = d.dot(x) - resource;
  c.primal_violation =
      std::max(std::max(coupling, 0.0), std::max(-x.minCoeff(), 0.0));
  c.complementarity = std::abs(mu * coupling);
  c.stationarity =
      (x - (alpha - mu * d).cwiseMax(0.0)).cwiseAbs().maxCoeff();
  return c;
}

}  // namespace

double breakpoint_multiplier(const Eigen::VectorXd& c, const Eigen::VectorXd& d,
                             double resource) {
  const int n = static_cast<int>(c.size());
  std::vector<int> idx;
  idx.reserve(n);
  for (int i = 0; i < n; ++i)
    if (d(i) > 0.0 && c(i) > 0.0) idx.push_back(i);
  // phi(mu) = sum_{active} d_i (c_i - mu d_i), active = {c_i/d_i > mu};
  // piecewise linear, strictly decreasing until it hits zero.
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return c(a) / d(a) < c(b) / d(b);
  });
  const int m = static_cast<int>(idx.size());
  std::vector<double> suf_dc(m + 1, 0.0), suf_dd(m + 1, 0.0);
  for (int k = m - 1; k >= 0; --k) {
    suf_dc[k] = suf_dc[k + 1] + d(idx[k]) * c(idx[k]);
    suf_dd[k] = suf_dd[k + 1] + d(idx[k]) * d(idx[k]);
  }
  double lo = 0.0;
  for (int k = 0; k < m; ++k) {
    double hi = c(idx[k]) / d(idx[k]);
    // On [lo, hi] the active set is {idx[k..m-1]}.
    if (suf_dd[k] > 0.0) {
      double mu = (suf_dc[k] - resource) / suf_dd[k];
      if (mu >= lo - 1e-14 && mu <= hi + 1e-14) return std::max(mu, 0.0);
    }
    lo = hi;
  }
  return lo;  // resource <= 0 with everything clipped out
}

KktCertificate solve_centralized_qp(const QuadraticAffineProblem& prob) {
  require_scalar(prob, "solve_centralized_qp");
  Eigen::VectorXd alpha = prob.alphas(), d = prob.demands();
  double resource = prob.resource();
  Eigen::VectorXd x0 = alpha.cwiseMax(0.0);
  double mu = 0.0;
  if (d.dot(x0) > resource) mu = breakpoint_multiplier(alpha, d, resource);
  Eigen::VectorXd x = (alpha - mu * d).cwiseMax(0.0);
  return certify(x, mu, alpha, d, resource);
}

Eigen::VectorXd project_X(const QuadraticAffineProblem& prob,
                          const Eigen::VectorXd& y) {
  require_scalar(prob, "project_X");
  Eigen::VectorXd d = prob.demands();
  double resource = prob.resource();
  Eigen::VectorXd x = y.cwiseMax(0.0);
  if (d.dot(x) <= resource) return x;
  double nu = breakpoint_multiplier(y, d, resource);
  return (y - nu * d).cwiseMax(0.0);
}

KktCertificate solve_centralized_pg(const QuadraticAffineProblem& prob,
                                    double tol, int max_iter) {
  require_scalar(prob, "solve_centralized_pg");
  Eigen::VectorXd alpha = prob.alphas(), d = prob.demands();
  double resource = prob.resource();
  const double tau = 1.0 / prob.constants().kappa_f;
  Eigen::VectorXd x = project_X(prob, Eigen::VectorXd::Zero(alpha.size()));
  double res = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd grad = x - alpha;
    res = (project_X(prob, x - grad) - x).norm();
    if (res <= tol) break;
    x = project_X(prob, x - tau * grad);
    if (it + 1 == max_iter)
      throw SolverFailure("solve_centralized_pg: iteration cap", res);
  }
  // Multiplier from stationarity on the active set, least squares.
  double coupling_slack = resource - d.dot(x);
  double mu = 0.0;
  if (coupling_slack <= tol * std::max(1.0, resource)) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < x.size(); ++i) {
      if (x(i) > 0.0) {
        num += d(i) * (alpha(i) - x(i));
        den += d(i) * d(i);
      }
    }
    if (den > 0.0) mu = std::max(num / den, 0.0);
  }
  return certify(x, mu, alpha, d, resource);
}

}  // namespace suballoc
