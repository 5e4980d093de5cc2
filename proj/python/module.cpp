#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "suballoc/bench.hpp"
#include "suballoc/cones.hpp"
#include "suballoc/flows.hpp"
#include "suballoc/graph.hpp"
#include "suballoc/oracle.hpp"
#include "suballoc/problem.hpp"

namespace py = pybind11;
using namespace suballoc;

namespace {

py::dict cell_to_dict(const CellResult& r) {
  py::dict d;
  d["N"] = r.N;
  d["graph"] = to_string(r.graph);
  d["d_mean"] = r.d_mean;
  d["d_max"] = r.d_max;
  d["algo"] = to_string(r.algo);
  if (r.eps)
    d["eps"] = *r.eps;
  else
    d["eps"] = py::none();
  switch (r.status) {
    case RunStatus::converged: d["status"] = "converged"; break;
    case RunStatus::diverged: d["status"] = "diverged"; break;
    case RunStatus::timecap: d["status"] = "timecap"; break;
  }
  d["t_ter"] = r.t_ter;
  d["e_rel_pct"] = r.e_rel_pct;
  d["comm_mean"] = r.comm_mean;
  d["comm_max"] = r.comm_max;
  d["residual"] = r.residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_suballoc, m) {
  m.doc() =
      "distributed resource allocation over weight-balanced digraphs: "
      "graph generators, centralized oracles, and the projected "
      "two-time-scale flow";

  py::class_<Digraph>(m, "Digraph")
      .def_property_readonly("n", &Digraph::n)
      .def_readonly("weights", &Digraph::weights)
      .def("is_weight_balanced", &Digraph::is_weight_balanced,
           py::arg("tol") = 1e-12)
      .def("is_strongly_connected", &Digraph::is_strongly_connected);

  m.def("circle_graph", &gen_directed_circle, py::arg("n"),
        py::arg("weight") = 1.0);
  m.def("complete_graph", &gen_complete, py::arg("n"),
        py::arg("weight") = 1.0);
  m.def("random_balanced_graph", &gen_random_balanced, py::arg("n"),
        py::arg("density"), py::arg("seed"));
  m.def("normalize_laplacian", &normalize_laplacian, py::arg("graph"),
        "rescale edge weights so the Laplacian has unit spectral norm");
  m.def(
      "laplacian",
      [](const Digraph& g) {
        Laplacian l = laplacian(g);
        return py::make_tuple(l.matrix, l.spectral_norm);
      },
      py::arg("graph"), "returns (matrix, spectral_norm)");
  m.def(
      "degree_stats",
      [](const Digraph& g) {
        DegreeStats s = degree_stats(g);
        return py::make_tuple(s.mean, s.max);
      },
      py::arg("graph"), "returns (mean, max) total weighted degree");

  py::class_<QuadraticAffineProblem>(m, "Problem")
      .def_property_readonly("num_agents",
                             &QuadraticAffineProblem::num_agents)
      .def_property_readonly("alphas", &QuadraticAffineProblem::alphas)
      .def_property_readonly("demands", &QuadraticAffineProblem::demands)
      .def_property_readonly("resource", &QuadraticAffineProblem::resource)
      .def_readonly("seed", &QuadraticAffineProblem::seed)
      .def("grad_f", &QuadraticAffineProblem::grad_f, py::arg("x"))
      .def("eval_u", &QuadraticAffineProblem::eval_u, py::arg("x"));

  m.def("make_instance", &gen_5g_instance, py::arg("n"), py::arg("seed"),
        "random scalar allocation instance, deterministic in (n, seed)");

  m.def(
      "solve_centralized",
      [](const QuadraticAffineProblem& prob) {
        KktCertificate c = solve_centralized_qp(prob);
        py::dict d;
        d["x_star"] = c.x_star;
        d["mu_star"] = c.mu_star;
        d["stationarity"] = c.stationarity;
        d["primal_violation"] = c.primal_violation;
        d["complementarity"] = c.complementarity;
        return d;
      },
      py::arg("problem"), "exact optimum with a KKT certificate");

  m.def(
      "solve_lcp",
      [](const Digraph& g, const Eigen::VectorXd& u, double eps, double tol) {
        KronLaplacian lk = KronLaplacian::from(laplacian(g), 1);
        return solve_lcp_laplacian(lk, u, eps, tol).z;
      },
      py::arg("graph"), py::arg("u"), py::arg("eps") = 1.0,
      py::arg("tol") = 1e-10,
      "projected-iteration solution of LCP(-eps*u, L)");

  m.def(
      "solve_equilibrium",
      [](const QuadraticAffineProblem& prob, const Digraph& g, double eps,
         double tol) {
        KronLaplacian lk =
            KronLaplacian::from(laplacian(g), prob.coupling_dim());
        auto [x, lam] = solve_equilibrium_fixed_point(prob, lk, eps, tol);
        return py::make_tuple(x, lam);
      },
      py::arg("problem"), py::arg("graph"), py::arg("eps"),
      py::arg("tol") = 1e-10,
      "algebraic equilibrium (x, lambda) of the two-time-scale flow");

  m.def(
      "integrate",
      [](const QuadraticAffineProblem& prob, const Digraph& g,
         const std::string& algo, double eps, double h, double tol,
         double t_max) {
        KronLaplacian lk =
            KronLaplacian::from(laplacian(g), prob.coupling_dim());
        FlowConfig cfg;
        cfg.eps = eps;
        cfg.h = h;
        cfg.stop_tol = tol;
        cfg.t_max = t_max;
        RunResult run = algo_from_string(algo) == Algo::algorithm1
                            ? run_algorithm1(prob, lk, cfg)
                            : run_baseline(prob, lk, cfg);
        py::dict d;
        switch (run.status) {
          case RunStatus::converged: d["status"] = "converged"; break;
          case RunStatus::diverged: d["status"] = "diverged"; break;
          case RunStatus::timecap: d["status"] = "timecap"; break;
        }
        d["t_ter"] = run.t_ter;
        d["steps"] = run.steps;
        d["x"] = run.final_state.x;
        d["lam"] = run.final_state.lambda;
        d["residual"] = run.residual;
        return d;
      },
      py::arg("problem"), py::arg("graph"), py::arg("algo") = "algorithm1",
      py::arg("eps") = 0.01, py::arg("h") = 0.001, py::arg("tol") = 1e-5,
      py::arg("t_max") = 2000.0,
      "Euler-integrate a flow from the default start");

  m.def(
      "run_cell",
      [](int n, const std::string& graph, const std::string& algo, double eps,
         std::uint64_t seed, double density) {
        CellSpec c;
        c.N = n;
        c.graph = graph_type_from_string(graph);
        c.algo = algo_from_string(algo);
        c.eps = eps;
        c.seed = seed;
        c.density = density;
        return cell_to_dict(run_cell(c));
      },
      py::arg("n"), py::arg("graph") = "circle",
      py::arg("algo") = "algorithm1", py::arg("eps") = 0.01,
      py::arg("seed") = 40, py::arg("density") = 0.5,
      "one benchmark cell scored against the centralized oracle");
}
