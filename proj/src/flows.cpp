#include "suballoc/flows.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

namespace suballoc {

double State::norm() const {
  double s = x.squaredNorm() + lambda.squaredNorm();
  if (v_aux) s += v_aux->squaredNorm();
  return std::sqrt(s);
}

State rhs_algorithm1(const Problem& prob, const KronLaplacian& lk, double eps,
                     const State& s) {
  if (eps <= 0.0) throw std::invalid_argument("rhs_algorithm1: eps <= 0");
  State d;
  d.x = prob.project_local(s.x - prob.grad_f(s.x) -
                           prob.eval_v(s.x, s.lambda)) -
        s.x;
  Eigen::VectorXd inner =
      eps * s.lambda + eps * prob.eval_u(s.x) - lk.apply(s.lambda);
  d.lambda = (inner.cwiseMax(0.0) - eps * s.lambda) / eps;
  return d;
}

State rhs_baseline(const Problem& prob, const KronLaplacian& lk,
                   const State& s) {
  if (!s.v_aux)
    throw std::invalid_argument("rhs_baseline: state lacks v_aux block");
  State d;
  d.x = prob.project_local(s.x - prob.grad_f(s.x) -
                           prob.eval_v(s.x, s.lambda)) -
        s.x;
  Eigen::VectorXd inner = s.lambda + prob.eval_u(s.x) - lk.apply(s.lambda) -
                          lk.apply(*s.v_aux);
  d.lambda = inner.cwiseMax(0.0) - s.lambda;
  d.v_aux = lk.apply(s.lambda);
  return d;
}

RunResult euler_integrate(const Rhs& rhs, State s0, const FlowConfig& cfg) {
  if (cfg.h <= 0.0 || cfg.h > 1.0)
    throw std::invalid_argument("euler_integrate: need 0 < h <= 1");
  if (cfg.stop_tol <= 0.0 || cfg.t_max <= 0.0)
    throw std::invalid_argument("euler_integrate: bad config");

  RunResult out;
  State s = std::move(s0);
  long k = 0;
  const long max_steps = static_cast<long>(std::ceil(cfg.t_max / cfg.h));
  for (;; ++k) {
    double t = k * cfg.h;
    State d = rhs(s);
    double dz = d.norm();
    if (!std::isfinite(dz) || !std::isfinite(s.norm())) {
      out.status = RunStatus::diverged;
      out.t_ter = t;
      break;
    }
    if (k % cfg.record_every == 0)
      out.samples.push_back({t, dz, s});
    if (dz <= cfg.stop_tol) {
      out.status = RunStatus::converged;
      out.t_ter = t;
      break;
    }
    if (s.norm() >= cfg.diverge_norm) {
      out.status = RunStatus::diverged;
      out.t_ter = t;
      break;
    }
    if (k >= max_steps) {
      out.status = RunStatus::timecap;
      out.t_ter = t;
      break;
    }
    s.x += cfg.h * d.x;
    s.lambda += cfg.h * d.lambda;
    if (s.v_aux) *s.v_aux += cfg.h * *d.v_aux;
  }
  out.steps = k;
  out.final_state = s;
  if (out.samples.empty() || out.samples.back().t != out.t_ter)
    out.samples.push_back({out.t_ter, rhs(s).norm(), s});
  return out;
}

double equilibrium_residual(const Problem& prob, const KronLaplacian& lk,
                            double eps, const State& s) {
  State d = rhs_algorithm1(prob, lk, eps, s);
  return std::sqrt(d.x.squaredNorm() + (eps * d.lambda).squaredNorm());
}

namespace {

State initial_state(const Problem& prob, const KronLaplacian& lk,
                    bool with_aux) {
  State s;
  s.x = prob.project_local(Eigen::VectorXd::Zero(prob.primal_dim()));
  s.lambda = Eigen::VectorXd::Zero(lk.dim());
  if (with_aux) s.v_aux = Eigen::VectorXd::Zero(lk.dim());
  return s;
}

}  // namespace

RunResult run_algorithm1(const Problem& prob, const KronLaplacian& lk,
                         const FlowConfig& cfg) {
  RunResult r = euler_integrate(
      [&](const State& s) { return rhs_algorithm1(prob, lk, cfg.eps, s); },
      initial_state(prob, lk, false), cfg);
  r.residual = equilibrium_residual(prob, lk, cfg.eps, r.final_state);
  return r;
}

RunResult run_baseline(const Problem& prob, const KronLaplacian& lk,
                       const FlowConfig& cfg) {
  RunResult r = euler_integrate(
      [&](const State& s) { return rhs_baseline(prob, lk, s); },
      initial_state(prob, lk, true), cfg);
  // Residual of the target equilibrium system, for comparability.
  r.residual = equilibrium_residual(prob, lk, cfg.eps, r.final_state);
  return r;
}

namespace {

Eigen::VectorXd stack(const State& s) {
  Eigen::VectorXd z(s.x.size() + s.lambda.size());
  z << s.x, s.lambda;
  return z;
}

Eigen::VectorXd eval_G(const Problem& prob, const KronLaplacian& lk,
                       double eps, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& lambda) {
  Eigen::VectorXd g(x.size() + lambda.size());
  g.head(x.size()) = prob.grad_f(x) + prob.eval_v(x, lambda);
  g.tail(lambda.size()) = lk.apply(lambda) / eps - prob.eval_u(x);
  return g;
}

Eigen::VectorXd project_Lambda(const Problem& prob, const Eigen::VectorXd& z,
                               Eigen::Index nx) {
  Eigen::VectorXd out(z.size());
  out.head(nx) = prob.project_local(z.head(nx));
  out.tail(z.size() - nx) = z.tail(z.size() - nx).cwiseMax(0.0);
  return out;
}

}  // namespace

double lyapunov_value(const Problem& prob, const KronLaplacian& lk, double eps,
                      const State& z, const State& zref) {
  const Eigen::Index nx = z.x.size();
  Eigen::VectorXd zz = stack(z);
  Eigen::VectorXd g = eval_G(prob, lk, eps, z.x, z.lambda);
  Eigen::VectorXd h = project_Lambda(prob, zz - g, nx);
  Eigen::VectorXd diff = zz - h;
  return diff.dot(g) - 0.5 * diff.squaredNorm() +
         0.5 * (zz - stack(zref)).squaredNorm();
}

LyapunovDiag lyapunov_series(const Problem& prob, const KronLaplacian& lk,
                             double eps,
                             const std::vector<TrajectorySample>& samples,
                             const State& zref) {
  LyapunovDiag diag;
  diag.t.reserve(samples.size());
  diag.v.reserve(samples.size());
  diag.half_dist.reserve(samples.size());
  Eigen::VectorXd zr = stack(zref);
  for (const auto& s : samples) {
    diag.t.push_back(s.t);
    diag.v.push_back(lyapunov_value(prob, lk, eps, s.state, zref));
    diag.half_dist.push_back(0.5 * (stack(s.state) - zr).squaredNorm());
  }
  return diag;
}

MonotonicityReport monotonicity_check(const Problem& prob,
                                      const KronLaplacian& lk, double eps,
                                      int trials, std::uint64_t seed) {
  if (trials < 1)
    throw std::invalid_argument("monotonicity_check: trials < 1");
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const int nx = prob.primal_dim();
  const int nl = lk.dim();
  const double mu_f = prob.constants().mu_f;
  MonotonicityReport rep{0.0, trials};
  for (int t = 0; t < trials; ++t) {
    auto sample = [&]() {
      Eigen::VectorXd x(nx), l(nl);
      for (int i = 0; i < nx; ++i) x(i) = -5.0 + 10.0 * unit();
      for (int i = 0; i < nl; ++i) l(i) = 5.0 * unit();
      return std::make_pair(prob.project_local(x), l);
    };
    auto [x, l] = sample();
    auto [x2, l2] = sample();
    Eigen::VectorXd dg = eval_G(prob, lk, eps, x2, l2) -
                         eval_G(prob, lk, eps, x, l);
    Eigen::VectorXd dx = x2 - x, dl = l2 - l;
    double lhs = dx.dot(dg.head(nx)) + dl.dot(dg.tail(nl));
    double rhs = mu_f * dx.squaredNorm() + dl.dot(lk.apply(dl)) / eps;
    rep.worst_slack = std::min(rep.worst_slack, lhs - rhs);
  }
  return rep;
}

void write_trajectory(const Problem& prob, const KronLaplacian& lk, double eps,
                      const RunResult& run, std::ostream& os) {
  LyapunovDiag diag =
      lyapunov_series(prob, lk, eps, run.samples, run.final_state);
  os << "t,dz_norm,V,g_sum\n";
  os.precision(10);
  for (std::size_t i = 0; i < run.samples.size(); ++i) {
    const auto& s = run.samples[i];
    Eigen::VectorXd u = prob.eval_u(s.state.x);
    const int p = prob.coupling_dim();
    double worst = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < p; ++c) {
      double sum = 0.0;
      for (int a = 0; a < prob.num_agents(); ++a) sum += u(a * p + c);
      worst = std::max(worst, sum);
    }
    os << s.t << ',' << s.dz_norm << ',' << diag.v[i] << ',' << worst << '\n';
  }
}

}  // namespace suballoc
