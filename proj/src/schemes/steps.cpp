#include "mvsde/schemes/steps.hpp"

#include <string>

namespace mvsde {

void scheme_step(const Positions& current, const MeasureView& mu, Positions& next,
                 const ModelSpec& model, const StepParams& params,
                 const IncrementFn& increments, ThreadPool* pool) {
  const Eigen::Index n = current.rows();
  const int d = model.dim;
  const int l = model.bm_dim;
  const double h = params.h;
  const double t = params.t;

  auto body = [&](Eigen::Index begin, Eigen::Index end) {
    Eigen::VectorXd b(d), dw(l), noise(d), diag(d), y(d);
    Eigen::MatrixXd sigma(d, l);
    for (Eigen::Index i = begin; i < end; ++i) {
      const auto x = current.row(i).transpose();
      increments(i, dw);

      if (model.diffusion_diagonal) {
        model.diffusion_diagonal(t, x, mu, diag);
        noise = diag.cwiseProduct(dw);
      } else {
        model.diffusion(t, x, mu, sigma);
        noise.noalias() = sigma * dw;
      }

      switch (params.kind) {
        case SchemeKind::StandardEuler:
          model.drift(t, x, mu, b);
          next.row(i) = (x + h * b + noise).transpose();
          break;
        case SchemeKind::TamedEuler:
          model.drift(t, x, mu, b);
          next.row(i) =
              (x + h * tame_drift(b, params.taming_steps, params.taming_alpha) +
               noise)
                  .transpose();
          break;
        case SchemeKind::ImplicitEuler: {
          y = x + noise;
          auto [solution, report] = solve_implicit_point(
              t, y, mu, model, h, params.solver_tol, params.solver_max_iter);
          if (!report.converged)
            throw SolverFailure(
                "implicit point solve failed for particle " + std::to_string(i) +
                    " (residual " + std::to_string(report.residual) + " after " +
                    std::to_string(report.iterations) + " iterations)",
                i, report);
          next.row(i) = solution.transpose();
          break;
        }
      }
    }
  };

  if (pool) {
    pool->parallel_for(n, body);
  } else {
    body(0, n);
  }
}

namespace {

void step_in_place(ParticleEnsemble& ensemble, const ModelSpec& model,
                   const StepParams& params, const IncrementFn& increments,
                   ThreadPool* pool) {
  const MeasureView mu(ensemble.positions);
  Positions next(ensemble.positions.rows(), ensemble.positions.cols());
  scheme_step(ensemble.positions, mu, next, model, params, increments, pool);
  ensemble.positions.swap(next);
  ensemble.step_index += 1;
}

}  // namespace

void step_standard_euler(ParticleEnsemble& ensemble, const ModelSpec& model,
                         double h, const IncrementFn& increments, ThreadPool* pool) {
  StepParams params;
  params.kind = SchemeKind::StandardEuler;
  params.t = static_cast<double>(ensemble.step_index) * h;
  params.h = h;
  step_in_place(ensemble, model, params, increments, pool);
}

void step_tamed_euler(ParticleEnsemble& ensemble, const ModelSpec& model, double h,
                      std::int64_t taming_steps, double taming_alpha,
                      const IncrementFn& increments, ThreadPool* pool) {
  StepParams params;
  params.kind = SchemeKind::TamedEuler;
  params.t = static_cast<double>(ensemble.step_index) * h;
  params.h = h;
  params.taming_steps = taming_steps;
  params.taming_alpha = taming_alpha;
  step_in_place(ensemble, model, params, increments, pool);
}

void step_implicit_euler(ParticleEnsemble& ensemble, const ModelSpec& model,
                         double h, double solver_tol, int solver_max_iter,
                         const IncrementFn& increments, ThreadPool* pool) {
  StepParams params;
  params.kind = SchemeKind::ImplicitEuler;
  params.t = static_cast<double>(ensemble.step_index) * h;
  params.h = h;
  params.solver_tol = solver_tol;
  params.solver_max_iter = solver_max_iter;
  step_in_place(ensemble, model, params, increments, pool);
}

}  // namespace mvsde
