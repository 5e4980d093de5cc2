// Command-line front end for the distributed allocation flow simulator.
//
//   suballoc run   --n 10 --graph circle --eps 0.01 [--trajectory t.csv]
//   suballoc grid  --spec sweep.cfg --out results.csv --jobs 4
//   suballoc check
//
// run and grid emit the benchmark CSV; check executes the oracle and
// property suites and exits nonzero on any violation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "suballoc/bench.hpp"
#include "suballoc/cones.hpp"
#include "suballoc/flows.hpp"
#include "suballoc/graph.hpp"
#include "suballoc/oracle.hpp"
#include "suballoc/problem.hpp"

using namespace suballoc;

namespace {

Digraph build_graph(int n, GraphType g, std::uint64_t seed, double density) {
  switch (g) {
    case GraphType::circle: return gen_directed_circle(n, 1.0);
    case GraphType::complete: return gen_complete(n, 1.0);
    case GraphType::random:
      return gen_random_balanced(
          n, density,
          mix_seed(seed, static_cast<std::uint64_t>(n),
                   static_cast<std::uint64_t>(g) + 1));
  }
  throw std::invalid_argument("bad graph type");
}

void write_results(const std::vector<CellResult>& results,
                   const std::string& out) {
  if (out.empty())
    emit_csv(results, std::cout);
  else
    emit_csv_file(results, out);
}

int cmd_run(const CellSpec& cell, const std::string& out,
            const std::string& trajectory) {
  CellResult res = run_cell(cell);
  write_results({res}, out);

  if (!trajectory.empty()) {
    auto prob = gen_5g_instance(
        cell.N, mix_seed(cell.seed, static_cast<std::uint64_t>(cell.N)));
    Digraph g = normalize_laplacian(
        build_graph(cell.N, cell.graph, cell.seed, cell.density));
    auto lk = KronLaplacian::from(laplacian(g), prob.coupling_dim());
    FlowConfig cfg = cell.flow;
    cfg.eps = cell.eps;
    RunResult run = cell.algo == Algo::algorithm1
                        ? run_algorithm1(prob, lk, cfg)
                        : run_baseline(prob, lk, cfg);
    std::ofstream os(trajectory);
    if (!os) throw std::runtime_error("cannot open " + trajectory);
    write_trajectory(prob, lk, cfg.eps, run, os);
  }
  return res.status == RunStatus::diverged ? 2 : 0;
}

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int cmd_check() {
  int bad = 0;
  auto report = [&bad](const char* what, bool ok) {
    std::printf("%-46s %s\n", what, ok ? "PASS" : "FAIL");
    if (!ok) ++bad;
  };

  {
    bool ok = true;
    std::mt19937_64 rng(314);
    for (int t = 0; t < 50 && ok; ++t) {
      auto prob = gen_5g_instance(4 + static_cast<int>(rng() % 30), rng());
      auto qp = solve_centralized_qp(prob);
      auto pg = solve_centralized_pg(prob, 1e-10);
      ok = (qp.x_star - pg.x_star).norm() <= 1e-6 &&
           qp.stationarity <= 1e-10 && qp.primal_violation <= 1e-10 &&
           qp.complementarity <= 1e-10;
    }
    report("centralized oracle cross-check", ok);
  }

  {
    bool ok = true;
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 50 && ok; ++t) {
      int n = 3 + static_cast<int>(rng() % 6);
      Digraph g = gen_random_balanced(n, 0.6, rng());
      auto lk = KronLaplacian::from(laplacian(g), 1);
      Eigen::VectorXd u(n);
      for (int i = 0; i < n; ++i) u(i) = -1 + 2 * unit(rng);
      u.array() -= (u.sum() + 0.2 + unit(rng)) / n;
      auto it = solve_lcp_laplacian(lk, u, 0.5, 1e-12);
      auto bf = lcp_bruteforce(-0.5 * u, lk.L);
      double best = 1e18;
      for (const auto& s : bf)
        best = std::min(
            best, (lk.apply(s.z) - lk.apply(it.z)).cwiseAbs().maxCoeff());
      ok = !bf.empty() && best <= 1e-8 && it.comp <= 1e-8;
    }
    report("complementarity solver vs enumeration", ok);
  }

  {
    bool ok = true;
    std::mt19937_64 rng(9);
    auto prob = gen_5g_instance(6, mix_seed(40, 6));
    for (int t = 0; t < 500 && ok; ++t) {
      Eigen::VectorXd y(6), c(6);
      for (int i = 0; i < 6; ++i) {
        y(i) = -5 + 10 * unit(rng);
        c(i) = 5 * unit(rng);
      }
      Eigen::VectorXd px = project_X(prob, y);
      ok = (y - px).dot(px - project_X(prob, c)) >= -1e-12;
    }
    report("feasible-set projection inequality", ok);
  }

  {
    auto prob = gen_5g_instance(8, mix_seed(40, 8));
    auto g = normalize_laplacian(gen_directed_circle(8, 1.0));
    auto lk = KronLaplacian::from(laplacian(g), 1);
    bool ok = monotonicity_check(prob, lk, 0.01, 500, 5).worst_slack >= -1e-9;
    FlowConfig cfg;
    cfg.record_every = 10;
    auto run = run_algorithm1(prob, lk, cfg);
    ok = ok && run.status == RunStatus::converged;
    for (const auto& s : run.samples)
      ok = ok && s.state.x.minCoeff() >= 0.0 &&
           s.state.lambda.minCoeff() >= 0.0;
    report("operator monotonicity and invariance", ok);
  }

  std::printf("%s\n", bad == 0 ? "all checks passed" : "checks FAILED");
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed resource allocation flow simulator"};
  app.require_subcommand(1);

  CellSpec cell;
  std::string graph = "circle";
  std::string algo = "algorithm1";
  std::string out, trajectory;

  auto* run = app.add_subcommand("run", "integrate one configuration");
  run->add_option("--n", cell.N, "number of agents")->check(CLI::Range(2, 100000));
  run->add_option("--graph", graph, "circle | random | complete");
  run->add_option("--eps", cell.eps, "time-scale separation parameter")
      ->check(CLI::PositiveNumber);
  run->add_option("--algo", algo, "algorithm1 | baseline");
  run->add_option("--seed", cell.seed, "instance seed");
  run->add_option("--density", cell.density, "random graph density");
  run->add_option("--step", cell.flow.h, "Euler step");
  run->add_option("--tol", cell.flow.stop_tol, "termination tolerance");
  run->add_option("--tmax", cell.flow.t_max, "simulated time cap");
  run->add_option("--out", out, "CSV output path (default stdout)");
  run->add_option("--trajectory", trajectory, "per-run trajectory CSV path");

  std::string spec_path;
  int jobs = 0;
  auto* grid = app.add_subcommand("grid", "run a benchmark sweep");
  grid->add_option("--spec", spec_path, "flat key=value sweep file")
      ->required()
      ->check(CLI::ExistingFile);
  grid->add_option("--out", out, "CSV output path (default stdout)");
  grid->add_option("--jobs", jobs, "worker threads (overrides spec)");

  auto* check = app.add_subcommand("check", "run oracle and property suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      cell.graph = graph_type_from_string(graph);
      cell.algo = algo_from_string(algo);
      return cmd_run(cell, out, trajectory);
    }
    if (grid->parsed()) {
      ExperimentSpec spec = parse_spec_file(spec_path);
      if (jobs > 0) spec.jobs = jobs;
      write_results(run_grid(spec), out);
      return 0;
    }
    if (check->parsed()) return cmd_check();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
