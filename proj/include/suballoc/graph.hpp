#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace suballoc {

/// Weighted digraph with nonnegative weight matrix A = [a_ij],
/// where a_ij > 0 iff there is an edge (j -> i). Zero diagonal.
/// Generators below produce weight-balanced, strongly connected graphs.
struct Digraph {
  Eigen::MatrixXd weights;

  int n() const { return static_cast<int>(weights.rows()); }

  std::vector<std::vector<int>> in_neighbors() const;

  bool is_weight_balanced(double tol = 1e-12) const;
  bool is_strongly_connected() const;

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;
};

/// L = D - A with D = diag(row sums of A). For a balanced strongly
/// connected graph, L 1 = 0, 1^T L = 0 and L + L^T is PSD with a
/// simple zero eigenvalue.
struct Laplacian {
  Eigen::MatrixXd matrix;
  double spectral_norm = 0.0;

  int n() const { return static_cast<int>(matrix.rows()); }
};

struct DegreeStats {
  double mean = 0.0;
  double max = 0.0;
};

Digraph gen_directed_circle(int n, double w);
Digraph gen_complete(int n, double w);

/// Superposition of random directed Hamiltonian cycles with unit weights.
/// Each cycle adds one unit of in- and out-weight at every node, so the
/// result is weight-balanced exactly and strongly connected. The number of
/// cycles is chosen so the expected in-degree is about density*(n-1).
Digraph gen_random_balanced(int n, double density, std::uint64_t seed);

Laplacian laplacian(const Digraph& g);

/// Rescales all weights by 1/||L|| so the new Laplacian has unit
/// spectral norm. Throws DegenerateGraphError for an edgeless graph.
Digraph normalize_laplacian(const Digraph& g);

/// Per-node degree = in-degree + out-degree on the unweighted support of A.
DegreeStats degree_stats(const Digraph& g);

/// Largest singular value via power iteration on M^T M.
double spectral_norm(const Eigen::MatrixXd& m, double rel_tol = 1e-10,
                     int max_iter = 10000);

/// Edge list "i j w" per line, 0-based, row-major order.
void write_edge_list(const Digraph& g, std::ostream& os);

}  // namespace suballoc
