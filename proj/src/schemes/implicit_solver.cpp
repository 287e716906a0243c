#include "mvsde/schemes/implicit_solver.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace mvsde {

namespace {

constexpr double kSqrtEps = 1.4901161193847656e-08;  // sqrt(machine epsilon)

}  // namespace

std::pair<Eigen::VectorXd, ImplicitSolveReport> solve_implicit_point(
    double t, ConstVecRef y, const MeasureView& mu, const ModelSpec& model,
    double h, double tol, int max_iter) {
  const int d = model.dim;
  Eigen::VectorXd b(d), b_probe(d), x_probe(d);

  auto residual_of = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    model.drift(t, x, mu, b);
    g = x - h * b - y;
    return g.norm();
  };

  // Explicit predictor.
  model.drift(t, y, mu, b);
  Eigen::VectorXd x = y + h * b;

  Eigen::VectorXd g(d), g_cand(d);
  double res = residual_of(x, g);

  ImplicitSolveReport report;
  report.residual = res;
  if (res <= tol) {
    report.converged = true;
    return {x, report};
  }

  Eigen::MatrixXd jac(d, d);
  Eigen::VectorXd x_cand(d);

  for (int iter = 1; iter <= max_iter; ++iter) {
    report.iterations = iter;

    // G'(x) = I - h db/dx, columns by forward differences. `b` still holds
    // the drift at x from the latest residual evaluation.
    const Eigen::VectorXd b_at_x = b;
    for (int j = 0; j < d; ++j) {
      const double dx = kSqrtEps * (1.0 + std::abs(x(j)));
      x_probe = x;
      x_probe(j) += dx;
      model.drift(t, x_probe, mu, b_probe);
      jac.col(j) = -h * (b_probe - b_at_x) / dx;
      jac(j, j) += 1.0;
    }

    bool accepted = false;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    x_cand = x - lu.solve(g);
    if (x_cand.allFinite()) {
      const double res_cand = residual_of(x_cand, g_cand);
      if (res_cand < res) {
        x = x_cand;
        g = g_cand;
        res = res_cand;
        accepted = true;
      }
    }

    if (!accepted) {
      // Damped Picard fallback: halve towards x while the residual grows.
      model.drift(t, x, mu, b);
      Eigen::VectorXd target = y + h * b;
      double res_cand = std::numeric_limits<double>::infinity();
      for (int halving = 0; halving < 32; ++halving) {
        if (target.allFinite()) {
          res_cand = residual_of(target, g_cand);
          if (res_cand < res) break;
        }
        target = 0.5 * (target + x);
      }
      if (!(res_cand < res)) break;  // no progress in either direction
      x = target;
      g = g_cand;
      res = res_cand;
    }

    if (res <= tol) break;
  }

  report.residual = res;
  report.converged = res <= tol;
  return {x, report};
}

}  // namespace mvsde
