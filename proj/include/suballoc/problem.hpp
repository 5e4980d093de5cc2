#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

namespace suballoc {

struct ProblemConstants {
  double mu_f = 0.0;     // strong-convexity modulus of f
  double kappa_f = 0.0;  // Lipschitz constant of grad f
  double kappa_g = 0.0;  // Lipschitz constant of g
};

/// Per-agent data for the quadratic-cost / affine-constraint family:
/// f_i(x_i) = 1/2 ||x_i - alpha_i||^2, g_i(x_i) = D_i x_i - r_i,
/// Omega_i a box [lower, upper] (entries may be +-inf).
struct AgentSpec {
  int dim = 1;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  Eigen::VectorXd alpha;  // size dim
  Eigen::MatrixXd D;      // p x dim
  Eigen::VectorXd r;      // size p
};

/// Abstract problem interface used by the flows and cones machinery.
/// Stacked primal dimension is sum n_i; stacked dual/constraint dimension
/// is p*N with agent i owning the contiguous block [i*p, (i+1)*p).
class Problem {
 public:
  virtual ~Problem() = default;

  virtual int num_agents() const = 0;
  virtual int coupling_dim() const = 0;  // p
  virtual int primal_dim() const = 0;

  virtual ProblemConstants constants() const = 0;

  virtual Eigen::VectorXd grad_f(const Eigen::VectorXd& x) const = 0;

  /// u(x) = col(g_1(x_1), ..., g_N(x_N)), size p*N.
  virtual Eigen::VectorXd eval_u(const Eigen::VectorXd& x) const = 0;

  /// v(x, lambda) = col(grad g_1(x_1) lambda_1, ...), primal-shaped.
  virtual Eigen::VectorXd eval_v(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& lambda) const = 0;

  /// Blockwise projection onto Omega.
  virtual Eigen::VectorXd project_local(const Eigen::VectorXd& y) const = 0;
};

class QuadraticAffineProblem : public Problem {
 public:
  explicit QuadraticAffineProblem(std::vector<AgentSpec> agents);

  int num_agents() const override { return static_cast<int>(agents_.size()); }
  int coupling_dim() const override { return p_; }
  int primal_dim() const override { return primal_dim_; }

  ProblemConstants constants() const override { return constants_; }
  void set_constants(const ProblemConstants& c) { constants_ = c; }

  Eigen::VectorXd grad_f(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd eval_u(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd eval_v(const Eigen::VectorXd& x,
                         const Eigen::VectorXd& lambda) const override;
  Eigen::VectorXd project_local(const Eigen::VectorXd& y) const override;

  const std::vector<AgentSpec>& agents() const { return agents_; }
  int block_offset(int i) const { return offsets_[i]; }

  /// True for the 5G shape: every agent scalar, p = 1, Omega_i = [0, inf).
  bool is_scalar_family() const;

  // Scalar-family accessors (valid when is_scalar_family()).
  Eigen::VectorXd alphas() const;
  Eigen::VectorXd demands() const;  // d_i = D_i(0,0)
  double resource() const;          // R = sum r_i

  std::uint64_t seed = 0;  // provenance of generated instances

 private:
  std::vector<AgentSpec> agents_;
  std::vector<int> offsets_;
  int p_ = 0;
  int primal_dim_ = 0;
  ProblemConstants constants_;
};

/// The l = K = M = 1 slicing instance family: alpha_i in [0.5, 2],
/// d_i in (0, 1], R in [0.5 N, 2 N], g_i(x_i) = d_i x_i - R/N,
/// Omega_i = [0, inf). Deterministic in (N, seed). Asserts a Slater point.
QuadraticAffineProblem gen_5g_instance(int N, std::uint64_t seed);

/// Flat text round-trip for generated scalar-family instances.
void save_instance(const QuadraticAffineProblem& prob, std::ostream& os);
QuadraticAffineProblem load_instance(std::istream& is);

/// Deterministic uniform double in [lo, hi) from a 64-bit RNG draw.
/// Used instead of std::uniform_real_distribution so byte streams are
/// identical across standard library implementations.
double uniform_real(std::uint64_t draw, double lo, double hi);

/// SplitMix64 step; also used to derive per-cell seeds.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace suballoc
