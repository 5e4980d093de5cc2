// End-to-end acceptance checks for the allocation flows library. Each
// criterion prints exactly one pass/fail line; the process exits nonzero
// if any criterion fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "suballoc/bench.hpp"
#include "suballoc/cones.hpp"
#include "suballoc/flows.hpp"
#include "suballoc/graph.hpp"
#include "suballoc/oracle.hpp"
#include "suballoc/problem.hpp"

using namespace suballoc;

namespace {

int failures = 0;

void report(int k, const char* what, bool ok, const std::string& detail = "") {
  std::printf("criterion %2d  %-52s %s%s%s\n", k, what, ok ? "PASS" : "FAIL",
              detail.empty() ? "" : "  ", detail.c_str());
  if (!ok) ++failures;
}

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CellResult cell(int n, GraphType g, Algo a, double eps) {
  CellSpec c;
  c.N = n;
  c.graph = g;
  c.algo = a;
  c.eps = eps;
  return run_cell(c);
}

}  // namespace

int main() {
  const double kEps[3] = {0.1, 0.01, 0.001};

  // 1. Relative suboptimality scales linearly with the time-scale
  //    separation parameter.
  {
    bool ok = true;
    std::ostringstream note;
    std::vector<CellResult> rows;
    for (int n : {10, 50}) {
      for (GraphType g : {GraphType::complete, GraphType::circle}) {
        double prev = -1.0;
        for (double e : kEps) {
          CellResult r = cell(n, g, Algo::algorithm1, e);
          rows.push_back(r);
          if (r.status != RunStatus::converged) ok = false;
          if (prev >= 0.0 && !(r.e_rel_pct < prev)) ok = false;
          prev = r.e_rel_pct;
        }
      }
    }
    for (const auto& f : scaling_report(rows)) {
      if (f.slope < 0.7 || f.slope > 1.3) ok = false;
      note << to_string(f.graph) << f.N << ":"
           << static_cast<int>(f.slope * 100 + 0.5) / 100.0 << " ";
    }
    report(1, "e_rel slope in [0.7, 1.3], monotone in eps", ok, note.str());
  }

  // 2. Accuracy band at the finest eps across sizes and graph types.
  std::vector<CellResult> fine;
  {
    bool ok = true;
    double worst = 0.0;
    for (int n : {10, 50, 100}) {
      for (GraphType g :
           {GraphType::circle, GraphType::random, GraphType::complete}) {
        CellResult r = cell(n, g, Algo::algorithm1, 0.001);
        fine.push_back(r);
        if (r.status != RunStatus::converged || r.e_rel_pct > 0.5) ok = false;
        worst = std::max(worst, r.e_rel_pct);
      }
    }
    std::ostringstream note;
    note << "max e_rel " << worst << "%";
    report(2, "e_rel <= 0.5% at eps = 0.001, N up to 100", ok, note.str());
  }

  // 3. Termination-time ballpark for the converged cells above.
  {
    bool ok = true;
    double lo = 1e9, hi = 0.0;
    for (const auto& r : fine) {
      if (r.status != RunStatus::converged) continue;
      lo = std::min(lo, r.t_ter);
      hi = std::max(hi, r.t_ter);
      if (r.t_ter < 5.0 || r.t_ter > 30.0) ok = false;
    }
    std::ostringstream note;
    note << "t_ter in [" << lo << ", " << hi << "]";
    report(3, "t_ter in [5, 30] for converged cells", ok, note.str());
  }

  // 4. Auxiliary-variable baseline fails on the directed circle where the
  //    two-time-scale flow succeeds.
  {
    CellResult base = cell(10, GraphType::circle, Algo::baseline, 0.01);
    CellResult alg = cell(10, GraphType::circle, Algo::algorithm1, 0.01);
    bool ok = base.status != RunStatus::converged &&
              alg.status == RunStatus::converged;
    report(4, "baseline stalls on directed 10-circle, flow converges", ok);
  }

  // 5. Iterative complementarity solver agrees with the active-set
  //    enumeration oracle.
  {
    bool ok = true;
    int disagreements = 0;
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 100; ++t) {
      int n = 3 + static_cast<int>(rng() % 6);  // 3..8
      Digraph g = gen_random_balanced(n, 0.6, rng());
      KronLaplacian lk = KronLaplacian::from(laplacian(g), 1);
      Eigen::VectorXd u(n);
      for (int i = 0; i < n; ++i) u(i) = -1 + 2 * unit(rng);
      u.array() -= (u.sum() + 0.2 + unit(rng)) / n;
      try {
        auto it = solve_lcp_laplacian(lk, u, 0.5, 1e-12);
        auto bf = lcp_bruteforce(-0.5 * u, lk.L);
        double best = 1e18;
        for (const auto& s : bf)
          best = std::min(
              best, (lk.apply(s.z) - lk.apply(it.z)).cwiseAbs().maxCoeff());
        if (bf.empty() || best > 1e-8 || it.comp > 1e-8) ++disagreements;
      } catch (const std::exception&) {
        ++disagreements;
      }
    }
    ok = disagreements == 0;
    report(5, "LCP iteration matches enumeration oracle (100 cases)", ok);
  }

  // 6. Algebraic equilibrium matches the integrated terminal state.
  {
    auto prob = gen_5g_instance(5, mix_seed(40, 5));
    auto g = normalize_laplacian(gen_directed_circle(5, 1.0));
    auto lk = KronLaplacian::from(laplacian(g), 1);
    bool ok = false;
    std::ostringstream note;
    try {
      auto [xe, le] = solve_equilibrium_fixed_point(prob, lk, 0.01, 1e-11);
      FlowConfig cfg;
      cfg.eps = 0.01;
      auto run = run_algorithm1(prob, lk, cfg);
      double gap = (run.final_state.x - xe).norm();
      double res = equilibrium_residual(prob, lk, 0.01, State{xe, le, {}});
      ok = run.status == RunStatus::converged && gap <= 1e-4 && res <= 1e-6;
      note << "gap " << gap << ", residual " << res;
    } catch (const std::exception& e) {
      note << e.what();
    }
    report(6, "fixed-point equilibrium matches integrator", ok, note.str());
  }

  // 7. Property suites: projection inequalities, per-agent form of the
  //    right-hand side, operator monotonicity, Laplacian invariants,
  //    forward invariance.
  {
    bool ok = true;
    std::mt19937_64 rng(77);

    // Projection variational inequality on the cone and on the coupled
    // feasible set.
    auto prob = gen_5g_instance(6, mix_seed(40, 6));
    for (int t = 0; t < 1000 && ok; ++t) {
      Eigen::VectorXd y(6), c(6);
      for (int i = 0; i < 6; ++i) {
        y(i) = -5 + 10 * unit(rng);
        c(i) = 5 * unit(rng);
      }
      Eigen::VectorXd po = project_orthant(y);
      if ((y - po).dot(po - c.cwiseMax(0.0)) < -1e-12) ok = false;
      Eigen::VectorXd px = project_X(prob, y);
      Eigen::VectorXd cx = project_X(prob, c);
      if ((y - px).dot(px - cx) < -1e-12) ok = false;
      if ((project_X(prob, px) - px).cwiseAbs().maxCoeff() > 1e-12) ok = false;
    }

    // Stacked right-hand side equals the independent per-agent max form.
    auto gc = normalize_laplacian(gen_directed_circle(6, 1.0));
    auto lk = KronLaplacian::from(laplacian(gc), 1);
    Eigen::VectorXd alpha = prob.alphas(), d = prob.demands();
    const double eps = 0.01;
    for (int t = 0; t < 1000 && ok; ++t) {
      State s;
      s.x = Eigen::VectorXd(6);
      s.lambda = Eigen::VectorXd(6);
      for (int i = 0; i < 6; ++i) {
        s.x(i) = 5 * unit(rng);
        s.lambda(i) = 3 * unit(rng);
      }
      State der = rhs_algorithm1(prob, lk, eps, s);
      Eigen::VectorXd u = prob.eval_u(s.x);
      Eigen::VectorXd ll = lk.apply(s.lambda);
      for (int i = 0; i < 6; ++i) {
        double xdot =
            std::max(0.0, s.x(i) - (s.x(i) - alpha(i)) - d(i) * s.lambda(i)) -
            s.x(i);
        double ldot = (std::max(0.0, eps * s.lambda(i) + eps * u(i) - ll(i)) -
                       eps * s.lambda(i)) /
                      eps;
        if (std::abs(der.x(i) - xdot) > 1e-12 ||
            std::abs(der.lambda(i) - ldot) > 1e-12)
          ok = false;
      }
    }

    // Monotonicity of the stacked operator with the quadratic lower bound.
    if (monotonicity_check(prob, lk, eps, 1000, 5).worst_slack < -1e-9)
      ok = false;

    // Laplacian invariants over generated graphs.
    for (int t = 0; t < 100 && ok; ++t) {
      int n = 3 + static_cast<int>(rng() % 18);
      Digraph g = gen_random_balanced(n, 0.3 + 0.5 * unit(rng), rng());
      Laplacian lap = laplacian(g);
      if ((lap.matrix * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() >
          1e-10)
        ok = false;
      if ((Eigen::RowVectorXd::Ones(n) * lap.matrix).cwiseAbs().maxCoeff() >
          1e-10)
        ok = false;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          lap.matrix + lap.matrix.transpose());
      if (es.eigenvalues()(0) < -1e-9) ok = false;
    }

    // Forward invariance of the constraint cones along a default run.
    FlowConfig cfg;
    cfg.eps = eps;
    cfg.record_every = 10;
    auto run = run_algorithm1(prob, lk, cfg);
    for (const auto& s : run.samples)
      if (s.state.x.minCoeff() < 0.0 || s.state.lambda.minCoeff() < 0.0)
        ok = false;

    report(7, "projection / rhs identity / monotonicity / invariance", ok);
  }

  // 8. Energy-function diagnostic is non-increasing along converged runs
  //    and dominated from below by the squared distance to the terminal
  //    state. The discretization slack is calibrated by step halving.
  {
    bool ok = true;
    std::ostringstream note;
    struct Cfg {
      int n;
      GraphType g;
    };
    const Cfg runs[5] = {{10, GraphType::circle},
                         {10, GraphType::complete},
                         {10, GraphType::random},
                         {50, GraphType::circle},
                         {20, GraphType::complete}};
    auto worst_increment = [](const LyapunovDiag& d) {
      double w = 0.0;
      for (std::size_t i = 1; i < d.v.size(); ++i)
        w = std::max(w, d.v[i] - d.v[i - 1]);
      return w;
    };
    double worst = 0.0;
    for (const auto& rc : runs) {
      auto prob = gen_5g_instance(rc.n, mix_seed(40, rc.n));
      Digraph g;
      switch (rc.g) {
        case GraphType::circle: g = gen_directed_circle(rc.n, 1.0); break;
        case GraphType::complete: g = gen_complete(rc.n, 1.0); break;
        case GraphType::random:
          g = gen_random_balanced(rc.n, 0.5,
                                  mix_seed(40, rc.n, 2));
          break;
      }
      g = normalize_laplacian(g);
      auto lk = KronLaplacian::from(laplacian(g), 1);

      auto diag_at = [&](double h) {
        FlowConfig cfg;
        cfg.eps = 0.01;
        cfg.h = h;
        cfg.record_every = 100;
        auto run = run_algorithm1(prob, lk, cfg);
        if (run.status != RunStatus::converged) ok = false;
        return lyapunov_series(prob, lk, cfg.eps, run.samples,
                               run.final_state);
      };
      auto full = diag_at(0.001);
      auto half = diag_at(0.0005);
      double slack = 1e-6 + 3.0 * worst_increment(half);
      double inc = worst_increment(full);
      worst = std::max(worst, inc);
      if (inc > slack) ok = false;
      for (std::size_t i = 0; i < full.v.size(); ++i)
        if (full.v[i] < full.half_dist[i] - 1e-9) ok = false;
    }
    note << "worst increment " << worst;
    report(8, "energy series non-increasing, distance lower bound", ok,
           note.str());
  }

  // 9. The exact breakpoint solver and the projected-gradient fallback
  //    certify the same optimum.
  {
    bool ok = true;
    std::mt19937_64 rng(314);
    for (int t = 0; t < 100 && ok; ++t) {
      auto prob = gen_5g_instance(4 + static_cast<int>(rng() % 30), rng());
      auto qp = solve_centralized_qp(prob);
      auto pg = solve_centralized_pg(prob, 1e-10);
      if ((qp.x_star - pg.x_star).norm() > 1e-6) ok = false;
      if (qp.stationarity > 1e-10 || qp.primal_violation > 1e-10 ||
          qp.complementarity > 1e-10)
        ok = false;
      if (pg.stationarity > 1e-8 || pg.primal_violation > 1e-8 ||
          pg.complementarity > 1e-8)
        ok = false;
    }
    report(9, "breakpoint vs projected-gradient oracle (100 cases)", ok);
  }

  // 10. Grid output is byte identical across runs and thread counts.
  {
    ExperimentSpec spec;
    spec.sizes = {10, 20};
    spec.graphs = {GraphType::circle, GraphType::complete};
    spec.eps = {0.1, 0.01};
    spec.algos = {Algo::algorithm1, Algo::baseline};
    auto to_csv = [](const std::vector<CellResult>& r) {
      std::ostringstream os;
      emit_csv(r, os);
      return os.str();
    };
    std::string a = to_csv(run_grid(spec));
    spec.jobs = 4;
    std::string b = to_csv(run_grid(spec));
    std::string c = to_csv(run_grid(spec));
    bool ok = a == b && b == c && !a.empty();
    report(10, "grid CSV deterministic across runs and job counts", ok);
  }

  std::printf("%s (%d criteria failed)\n", failures == 0 ? "ALL PASS" : "FAIL",
              failures);
  return failures == 0 ? 0 : 1;
}
