#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "suballoc/flows.hpp"

namespace suballoc {

enum class GraphType { circle, random, complete };
enum class Algo { algorithm1, baseline };

const char* to_string(GraphType g);
const char* to_string(Algo a);
GraphType graph_type_from_string(const std::string& s);
Algo algo_from_string(const std::string& s);

struct ExperimentSpec {
  std::vector<int> sizes;
  std::vector<GraphType> graphs;
  std::vector<double> eps;
  std::vector<Algo> algos;
  std::uint64_t seed = 40;
  double density = 0.5;
  FlowConfig flow;
  int jobs = 1;
};

struct CellResult {
  int N = 0;
  GraphType graph = GraphType::circle;
  double d_mean = 0.0;
  double d_max = 0.0;
  Algo algo = Algo::algorithm1;
  std::optional<double> eps;  // absent for the baseline flow
  RunStatus status = RunStatus::timecap;
  double t_ter = 0.0;
  double e_rel_pct = 0.0;  // NaN when the run diverged
  double comm_mean = 0.0;  // d_mean * t_ter (doubled for the baseline)
  double comm_max = 0.0;
  double residual = 0.0;
  double wall_s = 0.0;
};

struct CellSpec {
  int N = 10;
  GraphType graph = GraphType::complete;
  Algo algo = Algo::algorithm1;
  double eps = 0.01;
  std::uint64_t seed = 40;
  double density = 0.5;
  FlowConfig flow;
};

/// One instance per (N, seed), one graph per (N, graph, seed); runs the
/// integrator and scores against the centralized oracle. Solver failures
/// land in the status fields.
CellResult run_cell(const CellSpec& cell);

/// Full grid; cells are independent and may run on spec.jobs threads.
/// Results come back in canonical (N, graph, algo, eps) order so the
/// output never depends on scheduling.
std::vector<CellResult> run_grid(const ExperimentSpec& spec);

struct ScalingFit {
  int N = 0;
  GraphType graph = GraphType::circle;
  double slope = 0.0;
  int points = 0;
};

/// Least-squares slope of log e_rel vs log eps per (N, graph) over the
/// converged algorithm-1 cells; groups with < 2 points are skipped.
std::vector<ScalingFit> scaling_report(const std::vector<CellResult>& results);

void emit_csv(const std::vector<CellResult>& results, std::ostream& os);
void emit_csv_file(const std::vector<CellResult>& results,
                   const std::string& path);

/// Flat key = value file, lists comma separated (keys: N, graphs, eps,
/// algos, seed, density, step, tol, tmax, jobs).
ExperimentSpec parse_spec_file(const std::string& path);

}  // namespace suballoc
