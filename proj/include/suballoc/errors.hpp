#pragma once

#include <stdexcept>
#include <string>

namespace suballoc {

struct DegenerateGraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleLcpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverFailure : std::runtime_error {
  double last_residual;
  SolverFailure(const std::string& what, double residual)
      : std::runtime_error(what), last_residual(residual) {}
};

struct NoContractionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedFormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace suballoc
