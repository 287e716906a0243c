#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "mvsde/core/types.hpp"

namespace mvsde {

struct ImplicitSolveReport {
  int iterations = 0;
  double residual = 0.0;  // final |x - h b(t,x,mu) - y|
  bool converged = false;
};

// Solves the backward-Euler point equation x - h b(t, x, mu) = y.
//
// Strategy: Newton on G(x) = x - h b(t,x,mu) - y with a forward-difference
// Jacobian (step sqrt(eps) * (1 + |x_j|)), started from the explicit
// predictor x0 = y + h b(t,y,mu). When a Newton candidate fails to reduce the
// residual the update falls back to a Picard step x <- y + h b(t,x,mu),
// halved towards the current iterate while it increases the residual.
//
// Does not throw on non-convergence; the report says what happened.
std::pair<Eigen::VectorXd, ImplicitSolveReport> solve_implicit_point(
    double t, ConstVecRef y, const MeasureView& mu, const ModelSpec& model,
    double h, double tol, int max_iter);

// Raised by the implicit step when a particle's point solve fails.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(std::string what, Eigen::Index particle, ImplicitSolveReport report)
      : std::runtime_error(std::move(what)), particle(particle), report(report) {}

  Eigen::Index particle;
  ImplicitSolveReport report;
};

}  // namespace mvsde
