#include "suballoc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "suballoc/errors.hpp"
#include "suballoc/graph.hpp"
#include "suballoc/oracle.hpp"

namespace suballoc {

const char* to_string(GraphType g) {
  switch (g) {
    case GraphType::circle: return "circle";
    case GraphType::random: return "random";
    case GraphType::complete: return "complete";
  }
  return "?";
}

const char* to_string(Algo a) {
  return a == Algo::algorithm1 ? "algorithm1" : "baseline";
}

GraphType graph_type_from_string(const std::string& s) {
  if (s == "circle") return GraphType::circle;
  if (s == "random") return GraphType::random;
  if (s == "complete") return GraphType::complete;
  throw std::invalid_argument("unknown graph type: " + s);
}

Algo algo_from_string(const std::string& s) {
  if (s == "algorithm1") return Algo::algorithm1;
  if (s == "baseline") return Algo::baseline;
  throw std::invalid_argument("unknown algorithm: " + s);
}

namespace {

Digraph build_graph(const CellSpec& cell) {
  switch (cell.graph) {
    case GraphType::circle: return gen_directed_circle(cell.N, 1.0);
    case GraphType::complete: return gen_complete(cell.N, 1.0);
    case GraphType::random:
      return gen_random_balanced(
          cell.N, cell.density,
          mix_seed(cell.seed, static_cast<std::uint64_t>(cell.N),
                   static_cast<std::uint64_t>(cell.graph) + 1));
  }
  throw std::invalid_argument("build_graph: bad type");
}

}  // namespace

CellResult run_cell(const CellSpec& cell) {
  CellResult res;
  res.N = cell.N;
  res.graph = cell.graph;
  res.algo = cell.algo;
  if (cell.algo == Algo::algorithm1) res.eps = cell.eps;
  res.e_rel_pct = std::numeric_limits<double>::quiet_NaN();
  res.residual = std::numeric_limits<double>::quiet_NaN();

  auto t0 = std::chrono::steady_clock::now();
  try {
    QuadraticAffineProblem prob = gen_5g_instance(
        cell.N, mix_seed(cell.seed, static_cast<std::uint64_t>(cell.N)));
    Digraph g = normalize_laplacian(build_graph(cell));
    DegreeStats deg = degree_stats(g);
    res.d_mean = deg.mean;
    res.d_max = deg.max;
    KronLaplacian lk = KronLaplacian::from(laplacian(g), prob.coupling_dim());

    FlowConfig cfg = cell.flow;
    cfg.eps = cell.eps;
    RunResult run = cell.algo == Algo::algorithm1
                        ? run_algorithm1(prob, lk, cfg)
                        : run_baseline(prob, lk, cfg);
    res.status = run.status;
    res.t_ter = run.t_ter;
    res.residual = run.residual;
    if (run.status != RunStatus::diverged) {
      KktCertificate kkt = solve_centralized_qp(prob);
      res.e_rel_pct = (run.final_state.x - kkt.x_star).norm() /
                      kkt.x_star.norm() * 100.0;
    }
    if (run.status == RunStatus::converged) {
      double factor = cell.algo == Algo::baseline ? 2.0 : 1.0;
      res.comm_mean = factor * deg.mean * run.t_ter;
      res.comm_max = factor * deg.max * run.t_ter;
    }
  } catch (const std::exception&) {
    res.status = RunStatus::diverged;  // solver failure recorded, grid goes on
  }
  res.wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

std::vector<CellResult> run_grid(const ExperimentSpec& spec) {
  if (spec.sizes.empty() || spec.graphs.empty() || spec.algos.empty())
    throw std::invalid_argument("run_grid: empty spec lists");
  for (double e : spec.eps)
    if (e <= 0.0) throw std::invalid_argument("run_grid: eps <= 0");

  std::vector<int> sizes = spec.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  std::vector<double> eps = spec.eps;
  std::sort(eps.rbegin(), eps.rend());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());

  auto has = [&](GraphType g) {
    return std::find(spec.graphs.begin(), spec.graphs.end(), g) !=
           spec.graphs.end();
  };
  auto has_algo = [&](Algo a) {
    return std::find(spec.algos.begin(), spec.algos.end(), a) !=
           spec.algos.end();
  };

  std::vector<CellSpec> cells;
  for (int n : sizes) {
    for (GraphType g : {GraphType::circle, GraphType::random,
                        GraphType::complete}) {
      if (!has(g)) continue;
      for (Algo a : {Algo::algorithm1, Algo::baseline}) {
        if (!has_algo(a)) continue;
        if (a == Algo::algorithm1) {
          if (eps.empty())
            throw std::invalid_argument("run_grid: algorithm1 needs eps");
          for (double e : eps)
            cells.push_back(
                {n, g, a, e, spec.seed, spec.density, spec.flow});
        } else {
          CellSpec c{n, g, a, spec.flow.eps, spec.seed, spec.density,
                     spec.flow};
          cells.push_back(c);
        }
      }
    }
  }

  std::vector<CellResult> results(cells.size());
  const int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      results[i] = run_cell(cells[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          results[i] = run_cell(cells[i]);
        }
      });
    for (auto& t : pool) t.join();
  }
  return results;
}

std::vector<ScalingFit> scaling_report(const std::vector<CellResult>& results) {
  std::vector<ScalingFit> fits;
  for (const auto& r : results) {
    if (r.algo != Algo::algorithm1 || r.status != RunStatus::converged)
      continue;
    bool found = false;
    for (const auto& f : fits)
      if (f.N == r.N && f.graph == r.graph) found = true;
    if (found) continue;
    std::vector<double> lx, ly;
    for (const auto& s : results) {
      if (s.N == r.N && s.graph == r.graph && s.algo == Algo::algorithm1 &&
          s.status == RunStatus::converged && s.eps && s.e_rel_pct > 0.0) {
        lx.push_back(std::log(*s.eps));
        ly.push_back(std::log(s.e_rel_pct));
      }
    }
    if (lx.size() < 2) continue;
    double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fits.push_back({r.N, r.graph, slope, static_cast<int>(lx.size())});
  }
  return fits;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void emit_csv(const std::vector<CellResult>& results, std::ostream& os) {
  os << "N,graph,d_mean,d_max,algo,eps,t_ter,e_rel_pct,comm_mean,comm_max,"
        "residual,status\n";
  for (const auto& r : results) {
    os << r.N << ',' << to_string(r.graph) << ',' << fmt(r.d_mean) << ','
       << fmt(r.d_max) << ',' << to_string(r.algo) << ',';
    if (r.eps) os << fmt(*r.eps);
    os << ',';
    switch (r.status) {
      case RunStatus::diverged: os << "inf"; break;
      case RunStatus::timecap: os << ">tmax"; break;
      case RunStatus::converged: os << fmt(r.t_ter); break;
    }
    os << ',';
    if (std::isfinite(r.e_rel_pct)) os << fmt(r.e_rel_pct);
    os << ',';
    if (r.status == RunStatus::converged)
      os << fmt(r.comm_mean) << ',' << fmt(r.comm_max);
    else
      os << ',';
    os << ',';
    if (std::isfinite(r.residual)) os << fmt(r.residual);
    os << ',';
    switch (r.status) {
      case RunStatus::converged: os << "converged"; break;
      case RunStatus::diverged: os << "diverged"; break;
      case RunStatus::timecap: os << "timecap"; break;
    }
    os << '\n';
  }
}

void emit_csv_file(const std::vector<CellResult>& results,
                   const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("emit_csv: cannot open " + path);
  emit_csv(results, os);
  if (!os.good()) throw std::runtime_error("emit_csv: write failed: " + path);
}

ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("spec file not found: " + path);
  ExperimentSpec spec;
  spec.graphs.clear();
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    std::vector<std::string> items;
    std::stringstream ss(val);
    std::string item;
    while (std::getline(ss, item, ',')) items.push_back(trim(item));

    if (key == "N") {
      spec.sizes.clear();
      for (auto& s : items) spec.sizes.push_back(std::stoi(s));
    } else if (key == "graphs") {
      for (auto& s : items) spec.graphs.push_back(graph_type_from_string(s));
    } else if (key == "eps") {
      spec.eps.clear();
      for (auto& s : items) spec.eps.push_back(std::stod(s));
    } else if (key == "algos") {
      spec.algos.clear();
      for (auto& s : items) spec.algos.push_back(algo_from_string(s));
    } else if (key == "seed") {
      spec.seed = std::stoull(val);
    } else if (key == "density") {
      spec.density = std::stod(val);
    } else if (key == "step") {
      spec.flow.h = std::stod(val);
    } else if (key == "tol") {
      spec.flow.stop_tol = std::stod(val);
    } else if (key == "tmax") {
      spec.flow.t_max = std::stod(val);
    } else if (key == "jobs") {
      spec.jobs = std::stoi(val);
    } else {
      throw std::runtime_error("spec file: unknown key '" + key + "'");
    }
  }
  if (spec.algos.empty()) spec.algos = {Algo::algorithm1};
  if (spec.graphs.empty())
    spec.graphs = {GraphType::circle, GraphType::random, GraphType::complete};
  return spec;
}

}  // namespace suballoc
