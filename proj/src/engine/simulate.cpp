#include "mvsde/engine/simulate.hpp"

#include <chrono>
#include <string>

#include "mvsde/schemes/steps.hpp"

namespace mvsde {

Positions sample_initial_positions(const ModelSpec& model, Eigen::Index n_particles,
                                   std::uint64_t master_seed) {
  Positions positions(n_particles, model.dim);
  for (Eigen::Index i = 0; i < n_particles; ++i) {
    RngStream stream(master_seed, StreamPurpose::InitialCondition,
                     static_cast<std::uint64_t>(i));
    positions.row(i) = model.initial_sampler(stream).transpose();
  }
  return positions;
}

namespace {

EmpiricalStats stats_at(std::int64_t step, double h, const MeasureView& mu,
                        Eigen::Index diverged_count) {
  EmpiricalStats s;
  s.step = step;
  s.time = static_cast<double>(step) * h;
  s.mean = mu.mean();
  s.second_moment = mu.second_moment();
  s.diverged_count = diverged_count;
  return s;
}

// Flags newly diverged particles; returns the updated total.
Eigen::Index scan_divergence(const Positions& positions, double threshold,
                             std::vector<char>& flags, Eigen::Index current) {
  for (Eigen::Index i = 0; i < positions.rows(); ++i) {
    if (flags[static_cast<std::size_t>(i)]) continue;
    const auto row = positions.row(i);
    if (!row.allFinite() || row.norm() > threshold) {
      flags[static_cast<std::size_t>(i)] = 1;
      ++current;
    }
  }
  return current;
}

}  // namespace

SimulationResult simulate_with_increments(const SimulationRun& run,
                                          const BrownianSource& increments,
                                          ThreadPool* pool) {
  run.model.check();
  run.config.validate(run.model);
  if (run.snapshot_stride < 0)
    throw std::invalid_argument("simulate: snapshot_stride must be >= 0");
  if (increments.n_steps() != run.config.n_steps)
    throw std::invalid_argument("simulate: increment source resolution mismatch");

  const std::int64_t n_steps = run.config.n_steps;
  const double h = run.config.step_size();
  const Eigen::Index n = run.n_particles;

  SimulationResult result;
  result.step_size = h;
  result.particle_diverged.assign(static_cast<std::size_t>(n), 0);
  result.stats.reserve(static_cast<std::size_t>(n_steps) + 1);

  Positions curr = sample_initial_positions(run.model, n, run.master_seed);
  Positions next(n, run.model.dim);

  const auto t_begin = std::chrono::steady_clock::now();

  Eigen::Index diverged_count = scan_divergence(
      curr, run.divergence_threshold, result.particle_diverged, 0);
  if (diverged_count > 0) {
    result.diverged = true;
    result.first_divergence_step = 0;
    if (diverged_count * 2 > n) result.majority_divergence_step = 0;
  }
  result.snapshots.push_back({0, curr});  // endpoints are always kept

  StepParams params;
  params.kind = run.config.kind;
  params.h = h;
  params.taming_steps = n_steps;
  params.taming_alpha = run.config.taming_alpha;
  params.solver_tol = run.config.solver_tol;
  params.solver_max_iter = run.config.solver_max_iter;

  std::int64_t step = 0;
  for (; step < n_steps; ++step) {
    const MeasureView mu(curr);
    result.stats.push_back(stats_at(step, h, mu, diverged_count));

    params.t = static_cast<double>(step) * h;
    const IncrementFn inc = [&](Eigen::Index particle, VecRef dw) {
      increments.increment(particle, step, dw);
    };
    try {
      scheme_step(curr, mu, next, run.model, params, inc, pool);
    } catch (const SolverFailure& failure) {
      throw SolverFailure("step " + std::to_string(step) + ": " + failure.what(),
                          failure.particle, failure.report);
    }
    curr.swap(next);

    diverged_count = scan_divergence(curr, run.divergence_threshold,
                                     result.particle_diverged, diverged_count);
    if (diverged_count > 0 && !result.first_divergence_step)
      result.first_divergence_step = step + 1;
    if (diverged_count * 2 > n && !result.majority_divergence_step)
      result.majority_divergence_step = step + 1;

    if (run.snapshot_stride > 0 && (step + 1) % run.snapshot_stride == 0 &&
        step + 1 < n_steps)
      result.snapshots.push_back({step + 1, curr});

    if (diverged_count > 0 && run.config.kind != SchemeKind::StandardEuler) {
      result.halted_early = true;
      ++step;
      break;
    }
  }

  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin)
          .count();

  const MeasureView mu_final(curr);
  result.stats.push_back(stats_at(step, h, mu_final, diverged_count));
  if (result.snapshots.empty() || result.snapshots.back().step != step)
    result.snapshots.push_back({step, curr});
  result.diverged = diverged_count > 0;
  result.final_step = step;
  result.final_positions = std::move(curr);
  return result;
}

SimulationResult simulate(const SimulationRun& run, ThreadPool* pool) {
  const BrownianSource increments(run.master_seed, run.model.bm_dim,
                                  run.config.n_steps, run.config.horizon);
  return simulate_with_increments(run, increments, pool);
}

PathwisePairResult simulate_pathwise_pair(const SimulationRun& base,
                                          const SchemeConfig& scheme_a,
                                          const SchemeConfig& scheme_b,
                                          ThreadPool* pool) {
  if (scheme_a.horizon != scheme_b.horizon)
    throw std::invalid_argument("simulate_pathwise_pair: horizons differ");
  const std::int64_t fine = std::max(scheme_a.n_steps, scheme_b.n_steps);
  if (fine % scheme_a.n_steps != 0 || fine % scheme_b.n_steps != 0)
    throw std::invalid_argument(
        "simulate_pathwise_pair: step counts do not nest (coarse must divide fine)");

  PathwisePairResult pair;
  {
    SimulationRun run = base;
    run.config = scheme_a;
    const BrownianSource src(base.master_seed, base.model.bm_dim, scheme_a.n_steps,
                             scheme_a.horizon, fine);
    pair.result_a = simulate_with_increments(run, src, pool);
  }
  {
    SimulationRun run = base;
    run.config = scheme_b;
    const BrownianSource src(base.master_seed, base.model.bm_dim, scheme_b.n_steps,
                             scheme_b.horizon, fine);
    pair.result_b = simulate_with_increments(run, src, pool);
  }

  pair.terminal_difference =
      (pair.result_a.final_positions - pair.result_b.final_positions)
          .rowwise()
          .norm();
  return pair;
}

}  // namespace mvsde
