#include "suballoc/problem.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace suballoc {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = seed;
  splitmix64(s);
  s ^= a * 0x2545f4914f6cdd1dULL;
  splitmix64(s);
  s ^= b * 0x9e3779b97f4a7c15ULL;
  return splitmix64(s);
}

double uniform_real(std::uint64_t draw, double lo, double hi) {
  double u = static_cast<double>(draw >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

QuadraticAffineProblem::QuadraticAffineProblem(std::vector<AgentSpec> agents)
    : agents_(std::move(agents)) {
  if (agents_.empty())
    throw std::invalid_argument("problem: need at least one agent");
  p_ = static_cast<int>(agents_.front().r.size());
  offsets_.reserve(agents_.size());
  for (const auto& a : agents_) {
    if (a.dim < 1 || a.lower.size() != a.dim || a.upper.size() != a.dim ||
        a.alpha.size() != a.dim || a.D.rows() != p_ || a.D.cols() != a.dim ||
        a.r.size() != p_)
      throw std::invalid_argument("problem: inconsistent agent dimensions");
    if ((a.lower.array() > a.upper.array()).any())
      throw std::invalid_argument("problem: lower > upper");
    offsets_.push_back(primal_dim_);
    primal_dim_ += a.dim;
  }
}

Eigen::VectorXd QuadraticAffineProblem::grad_f(const Eigen::VectorXd& x) const {
  if (x.size() != primal_dim_)
    throw std::invalid_argument("grad_f: dimension mismatch");
  Eigen::VectorXd g(primal_dim_);
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const auto& a = agents_[i];
    g.segment(offsets_[i], a.dim) =
        x.segment(offsets_[i], a.dim) - a.alpha;
  }
  return g;
}

Eigen::VectorXd QuadraticAffineProblem::eval_u(const Eigen::VectorXd& x) const {
  if (x.size() != primal_dim_)
    throw std::invalid_argument("eval_u: dimension mismatch");
  Eigen::VectorXd u(p_ * num_agents());
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const auto& a = agents_[i];
    u.segment(static_cast<int>(i) * p_, p_) =
        a.D * x.segment(offsets_[i], a.dim) - a.r;
  }
  return u;
}

Eigen::VectorXd QuadraticAffineProblem::eval_v(
    const Eigen::VectorXd& x, const Eigen::VectorXd& lambda) const {
  if (x.size() != primal_dim_ || lambda.size() != p_ * num_agents())
    throw std::invalid_argument("eval_v: dimension mismatch");
  if (lambda.size() > 0 && lambda.minCoeff() < -1e-12)
    std::cerr << "suballoc: eval_v called with negative multiplier\n";
  Eigen::VectorXd v(primal_dim_);
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const auto& a = agents_[i];
    v.segment(offsets_[i], a.dim) =
        a.D.transpose() * lambda.segment(static_cast<int>(i) * p_, p_);
  }
  return v;
}

Eigen::VectorXd QuadraticAffineProblem::project_local(
    const Eigen::VectorXd& y) const {
  if (y.size() != primal_dim_)
    throw std::invalid_argument("project_local: dimension mismatch");
  Eigen::VectorXd out(primal_dim_);
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const auto& a = agents_[i];
    out.segment(offsets_[i], a.dim) =
        y.segment(offsets_[i], a.dim).cwiseMax(a.lower).cwiseMin(a.upper);
  }
  return out;
}

bool QuadraticAffineProblem::is_scalar_family() const {
  if (p_ != 1) return false;
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (const auto& a : agents_)
    if (a.dim != 1 || a.lower(0) != 0.0 || a.upper(0) != inf) return false;
  return true;
}

Eigen::VectorXd QuadraticAffineProblem::alphas() const {
  Eigen::VectorXd out(num_agents());
  for (int i = 0; i < num_agents(); ++i) out(i) = agents_[i].alpha(0);
  return out;
}

Eigen::VectorXd QuadraticAffineProblem::demands() const {
  Eigen::VectorXd out(num_agents());
  for (int i = 0; i < num_agents(); ++i) out(i) = agents_[i].D(0, 0);
  return out;
}

double QuadraticAffineProblem::resource() const {
  double r = 0.0;
  for (const auto& a : agents_) r += a.r(0);
  return r;
}

QuadraticAffineProblem gen_5g_instance(int N, std::uint64_t seed) {
  if (N < 2) throw std::invalid_argument("gen_5g_instance: N < 2");
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::uint64_t state = seed;
  double resource = uniform_real(splitmix64(state), 0.5 * N, 2.0 * N);
  std::vector<AgentSpec> agents(N);
  double kappa_g = 0.0;
  for (int i = 0; i < N; ++i) {
    AgentSpec a;
    a.dim = 1;
    a.lower = Eigen::VectorXd::Zero(1);
    a.upper = Eigen::VectorXd::Constant(1, inf);
    a.alpha = Eigen::VectorXd::Constant(
        1, uniform_real(splitmix64(state), 0.5, 2.0));
    double d = uniform_real(splitmix64(state), 0.0, 1.0);
    while (d == 0.0) d = uniform_real(splitmix64(state), 0.0, 1.0);
    a.D = Eigen::MatrixXd::Constant(1, 1, d);
    a.r = Eigen::VectorXd::Constant(1, resource / N);
    kappa_g = std::max(kappa_g, d);
    agents[i] = std::move(a);
  }
  QuadraticAffineProblem prob(std::move(agents));
  prob.set_constants({1.0, 1.0, kappa_g});
  prob.seed = seed;
  // Slater point: x = 0 gives g(0) = -R < 0.
  Eigen::VectorXd u0 = prob.eval_u(Eigen::VectorXd::Zero(N));
  if (u0.sum() >= 0.0)
    throw std::logic_error("gen_5g_instance: no Slater point");
  return prob;
}

void save_instance(const QuadraticAffineProblem& prob, std::ostream& os) {
  if (!prob.is_scalar_family())
    throw std::invalid_argument("save_instance: scalar family only");
  os.precision(17);
  os << "suballoc-instance 1\n";
  os << "N " << prob.num_agents() << '\n';
  os << "seed " << prob.seed << '\n';
  os << "R " << prob.resource() << '\n';
  Eigen::VectorXd alpha = prob.alphas(), d = prob.demands();
  os << "alpha";
  for (int i = 0; i < alpha.size(); ++i) os << ' ' << alpha(i);
  os << "\nd";
  for (int i = 0; i < d.size(); ++i) os << ' ' << d(i);
  os << '\n';
}

QuadraticAffineProblem load_instance(std::istream& is) {
  std::string tag;
  int version = 0;
  is >> tag >> version;
  if (tag != "suballoc-instance" || version != 1)
    throw std::runtime_error("load_instance: bad header");
  int n = 0;
  std::uint64_t seed = 0;
  double resource = 0.0;
  std::string key;
  is >> key >> n >> key >> seed >> key >> resource;
  Eigen::VectorXd alpha(n), d(n);
  is >> key;
  for (int i = 0; i < n; ++i) is >> alpha(i);
  is >> key;
  for (int i = 0; i < n; ++i) is >> d(i);
  if (!is) throw std::runtime_error("load_instance: truncated file");

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<AgentSpec> agents(n);
  for (int i = 0; i < n; ++i) {
    AgentSpec a;
    a.dim = 1;
    a.lower = Eigen::VectorXd::Zero(1);
    a.upper = Eigen::VectorXd::Constant(1, inf);
    a.alpha = Eigen::VectorXd::Constant(1, alpha(i));
    a.D = Eigen::MatrixXd::Constant(1, 1, d(i));
    a.r = Eigen::VectorXd::Constant(1, resource / n);
    agents[i] = std::move(a);
  }
  QuadraticAffineProblem prob(std::move(agents));
  prob.set_constants({1.0, 1.0, d.cwiseAbs().maxCoeff()});
  prob.seed = seed;
  return prob;
}

}  // namespace suballoc
