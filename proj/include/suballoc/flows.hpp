#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "suballoc/cones.hpp"
#include "suballoc/problem.hpp"

namespace suballoc {

struct State {
  Eigen::VectorXd x;
  Eigen::VectorXd lambda;
  std::optional<Eigen::VectorXd> v_aux;  // baseline flow only

  double norm() const;
};

struct FlowConfig {
  double eps = 0.01;
  double h = 0.001;
  double stop_tol = 1e-5;
  double t_max = 2000.0;
  double diverge_norm = 1e8;
  int record_every = 100;
};

enum class RunStatus { converged, diverged, timecap };

struct TrajectorySample {
  double t = 0.0;
  double dz_norm = 0.0;
  State state;
};

struct RunResult {
  RunStatus status = RunStatus::timecap;
  double t_ter = 0.0;
  long steps = 0;
  State final_state;
  double residual = 0.0;  // equilibrium residual at the terminal state
  std::vector<TrajectorySample> samples;
};

/// xdot = P_Omega(x - grad f - v) - x,
/// lamdot = [P_+(eps lam + eps u - L lam) - eps lam] / eps.
State rhs_algorithm1(const Problem& prob, const KronLaplacian& lk, double eps,
                     const State& s);

/// Auxiliary-variable baseline:
/// xdot as above, lamdot = P_+(lam + u - L lam - L v) - lam, vdot = L lam.
State rhs_baseline(const Problem& prob, const KronLaplacian& lk,
                   const State& s);

using Rhs = std::function<State(const State&)>;

/// Fixed-step explicit Euler. The stop rule tests ||dz|| <= stop_tol
/// before stepping, so a start at an equilibrium terminates at t = 0.
RunResult euler_integrate(const Rhs& rhs, State s0, const FlowConfig& cfg);

/// Euclidean norm of the equilibrium system right-hand sides: the primal
/// block plus the eps-scaled dual block (eps * lamdot).
double equilibrium_residual(const Problem& prob, const KronLaplacian& lk,
                            double eps, const State& s);

/// Convenience: integrate from x = P_Omega(0), lambda = 0 and fill the
/// terminal equilibrium residual.
RunResult run_algorithm1(const Problem& prob, const KronLaplacian& lk,
                         const FlowConfig& cfg);
RunResult run_baseline(const Problem& prob, const KronLaplacian& lk,
                       const FlowConfig& cfg);

struct LyapunovDiag {
  std::vector<double> t;
  std::vector<double> v;          // Vtilde at each sample
  std::vector<double> half_dist;  // 1/2 ||z - zref||^2 lower bound
};

/// Vtilde(z) = (z - H(z))^T G(z) - 1/2||z - H(z)||^2 + 1/2||z - zref||^2
/// with H(z) = P_Lambda(z - G(z)) and G(z) = (grad f + v; L lam / eps - u).
LyapunovDiag lyapunov_series(const Problem& prob, const KronLaplacian& lk,
                             double eps,
                             const std::vector<TrajectorySample>& samples,
                             const State& zref);

double lyapunov_value(const Problem& prob, const KronLaplacian& lk, double eps,
                      const State& z, const State& zref);

struct MonotonicityReport {
  double worst_slack = 0.0;  // most negative lhs - rhs found
  int trials = 0;
};

/// Samples random pairs in Lambda and checks
/// (z'-z)^T (G(z')-G(z)) >= mu_f ||x'-x||^2 + (1/eps)(l'-l)^T L (l'-l).
MonotonicityReport monotonicity_check(const Problem& prob,
                                      const KronLaplacian& lk, double eps,
                                      int trials, std::uint64_t seed);

/// Columns: t, dz_norm, V, max g(x) block sum; one row per sample.
void write_trajectory(const Problem& prob, const KronLaplacian& lk, double eps,
                      const RunResult& run, std::ostream& os);

}  // namespace suballoc
