#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvsde/core/parallel.hpp"
#include "mvsde/core/types.hpp"
#include "mvsde/engine/brownian.hpp"

namespace mvsde {

struct SimulationRun {
  ModelSpec model;
  SchemeConfig config;
  Eigen::Index n_particles = 1000;
  std::uint64_t master_seed = 0;
  std::int64_t snapshot_stride = 0;  // full ensemble every k steps; 0 = endpoints only
  double divergence_threshold = 1e8;
};

struct Snapshot {
  std::int64_t step = 0;
  Positions positions;
};

struct SimulationResult {
  Positions final_positions;
  std::int64_t final_step = 0;
  double step_size = 0.0;
  std::vector<EmpiricalStats> stats;  // entry k describes the state at step k
  std::vector<Snapshot> snapshots;
  bool diverged = false;
  std::optional<std::int64_t> first_divergence_step;
  std::optional<std::int64_t> majority_divergence_step;  // > N/2 particles
  std::vector<char> particle_diverged;
  bool halted_early = false;
  double elapsed_seconds = 0.0;
};

// Runs the configured scheme for M steps. Divergence (a particle norm above
// the threshold, or a non-finite coordinate) is recorded per particle. The
// standard Euler scheme keeps stepping through a divergence so the ensemble
// corruption is observable; the tamed and implicit schemes halt at once,
// since for them a divergence indicates a misconfiguration.
//
// Throws SolverFailure (with step and particle context) if an implicit point
// solve does not converge.
SimulationResult simulate(const SimulationRun& run, ThreadPool* pool = nullptr);

// As simulate(), but consuming increments from an explicit source (used for
// nested coarse/fine couplings). The source resolution must match the config.
SimulationResult simulate_with_increments(const SimulationRun& run,
                                          const BrownianSource& increments,
                                          ThreadPool* pool = nullptr);

struct PathwisePairResult {
  SimulationResult result_a;
  SimulationResult result_b;
  Eigen::VectorXd terminal_difference;  // per-particle |X_T^a - X_T^b|
};

// Runs two schemes on the same Brownian paths: increments are generated on
// the finer of the two grids and the coarser scheme consumes their sums.
// Step counts must nest (the coarse count divides the fine count).
PathwisePairResult simulate_pathwise_pair(const SimulationRun& base,
                                          const SchemeConfig& scheme_a,
                                          const SchemeConfig& scheme_b,
                                          ThreadPool* pool = nullptr);

// Initial ensemble shared by every scheme at a given seed.
Positions sample_initial_positions(const ModelSpec& model, Eigen::Index n_particles,
                                   std::uint64_t master_seed);

}  // namespace mvsde
