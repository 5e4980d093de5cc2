#include "suballoc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "suballoc/errors.hpp"

namespace suballoc {

std::vector<std::vector<int>> Digraph::in_neighbors() const {
  std::vector<std::vector<int>> nbrs(n());
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (weights(i, j) > 0.0) nbrs[i].push_back(j);
  return nbrs;
}

bool Digraph::is_weight_balanced(double tol) const {
  Eigen::VectorXd row = weights.rowwise().sum();
  Eigen::VectorXd col = weights.colwise().sum();
  return (row - col).cwiseAbs().maxCoeff() <= tol;
}

namespace {

// BFS reachability from node 0 over positive-weight edges; transpose
// toggles the edge direction.
bool all_reachable(const Eigen::MatrixXd& a, bool transpose) {
  const int n = static_cast<int>(a.rows());
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      double w = transpose ? a(u, v) : a(v, u);  // edge u -> v iff a(v,u) > 0
      if (w > 0.0 && !seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

}  // namespace

bool Digraph::is_strongly_connected() const {
  if (n() == 0) return false;
  return all_reachable(weights, false) && all_reachable(weights, true);
}

void Digraph::validate() const {
  if (n() < 2 || weights.cols() != weights.rows())
    throw std::invalid_argument("digraph: need a square matrix with n >= 2");
  if (weights.minCoeff() < 0.0)
    throw std::invalid_argument("digraph: negative weight");
  if (weights.diagonal().cwiseAbs().maxCoeff() > 0.0)
    throw std::invalid_argument("digraph: nonzero diagonal");
  if (!is_weight_balanced())
    throw std::invalid_argument("digraph: not weight-balanced");
  if (!is_strongly_connected())
    throw std::invalid_argument("digraph: not strongly connected");
}

Digraph gen_directed_circle(int n, double w) {
  if (n < 2) throw std::invalid_argument("gen_directed_circle: n < 2");
  if (w <= 0.0) throw std::invalid_argument("gen_directed_circle: w <= 0");
  Digraph g;
  g.weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) g.weights(i, (i + n - 1) % n) = w;
  return g;
}

Digraph gen_complete(int n, double w) {
  if (n < 2) throw std::invalid_argument("gen_complete: n < 2");
  if (w <= 0.0) throw std::invalid_argument("gen_complete: w <= 0");
  Digraph g;
  g.weights = Eigen::MatrixXd::Constant(n, n, w);
  g.weights.diagonal().setZero();
  return g;
}

Digraph gen_random_balanced(int n, double density, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_random_balanced: n < 2");
  if (density <= 0.0 || density > 1.0)
    throw std::invalid_argument("gen_random_balanced: density outside (0,1]");
  Digraph g;
  g.weights = Eigen::MatrixXd::Zero(n, n);
  std::mt19937_64 rng(seed);
  int cycles = std::max(1, static_cast<int>(std::lround(density * (n - 1))));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int c = 0; c < cycles; ++c) {
    // Fisher-Yates with explicit modulo draws for cross-platform
    // determinism; modulo bias is irrelevant here.
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[i], perm[j]);
    }
    for (int i = 0; i < n; ++i) {
      int from = perm[i];
      int to = perm[(i + 1) % n];
      g.weights(to, from) += 1.0;
    }
  }
  return g;
}

Laplacian laplacian(const Digraph& g) {
  Laplacian lap;
  lap.matrix = -g.weights;
  lap.matrix.diagonal() += g.weights.rowwise().sum();
  lap.spectral_norm = spectral_norm(lap.matrix);
  return lap;
}

Digraph normalize_laplacian(const Digraph& g) {
  Laplacian lap = laplacian(g);
  if (lap.spectral_norm <= 1e-300)
    throw DegenerateGraphError("normalize_laplacian: graph has no edges");
  Digraph scaled;
  scaled.weights = g.weights / lap.spectral_norm;
  return scaled;
}

DegreeStats degree_stats(const Digraph& g) {
  const int n = g.n();
  DegreeStats st;
  for (int i = 0; i < n; ++i) {
    int deg = 0;
    for (int j = 0; j < n; ++j) {
      if (g.weights(i, j) > 0.0) ++deg;  // in-edge
      if (g.weights(j, i) > 0.0) ++deg;  // out-edge
    }
    st.mean += deg;
    st.max = std::max(st.max, static_cast<double>(deg));
  }
  st.mean /= n;
  return st;
}

double spectral_norm(const Eigen::MatrixXd& m, double rel_tol, int max_iter) {
  const int n = static_cast<int>(m.cols());
  if (n == 0) return 0.0;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = 1.0 + static_cast<double>(i) / n;
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = m.transpose() * (m * v);
    double nw = w.norm();
    if (nw <= 1e-300) return 0.0;
    double next = v.dot(w);
    v = w / nw;
    if (std::abs(next - lambda) <= rel_tol * std::max(next, 1e-300)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

void write_edge_list(const Digraph& g, std::ostream& os) {
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      if (g.weights(i, j) > 0.0)
        os << j << ' ' << i << ' ' << g.weights(i, j) << '\n';
}

}  // namespace suballoc
