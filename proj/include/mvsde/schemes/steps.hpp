#pragma once

#include <cstdint>
#include <functional>

#include "mvsde/core/parallel.hpp"
#include "mvsde/core/types.hpp"
#include "mvsde/schemes/implicit_solver.hpp"
#include "mvsde/schemes/taming.hpp"

namespace mvsde {

// Supplies the Brownian increment (bm_dim-vector, variance h per component)
// for one particle at the current step. Keeping this a callback lets the
// engine swap in nested coarse/fine increments and lets tests zero the noise.
using IncrementFn = std::function<void(Eigen::Index particle, VecRef dw)>;

struct StepParams {
  SchemeKind kind = SchemeKind::TamedEuler;
  double t = 0.0;  // time at the start of the step
  double h = 0.0;
  std::int64_t taming_steps = 1;  // M in the taming factor
  double taming_alpha = 0.5;
  double solver_tol = 1e-10;
  int solver_max_iter = 50;
};

// Advances every particle by one step of the selected scheme. The measure
// argument of both coefficients is the frozen pre-step view `mu` (which must
// reference `current`), so particles are independent within the step; `next`
// receives the post-step positions. Throws SolverFailure for the implicit
// scheme when a particle's point solve does not converge.
void scheme_step(const Positions& current, const MeasureView& mu, Positions& next,
                 const ModelSpec& model, const StepParams& params,
                 const IncrementFn& increments, ThreadPool* pool = nullptr);

// Spec-level single-step entry points; these update the ensemble in place.
void step_standard_euler(ParticleEnsemble& ensemble, const ModelSpec& model,
                         double h, const IncrementFn& increments,
                         ThreadPool* pool = nullptr);

void step_tamed_euler(ParticleEnsemble& ensemble, const ModelSpec& model, double h,
                      std::int64_t taming_steps, double taming_alpha,
                      const IncrementFn& increments, ThreadPool* pool = nullptr);

void step_implicit_euler(ParticleEnsemble& ensemble, const ModelSpec& model,
                         double h, double solver_tol, int solver_max_iter,
                         const IncrementFn& increments, ThreadPool* pool = nullptr);

}  // namespace mvsde
