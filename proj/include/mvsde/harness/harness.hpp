#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvsde/engine/simulate.hpp"
#include "mvsde/measure/measure.hpp"

namespace mvsde::harness {

// ---------------------------------------------------------------------------
// Strong convergence study: terminal RMSE against a fine-grid proxy, slope of
// log RMSE vs log h by least squares.
// ---------------------------------------------------------------------------

struct ConvergenceSpec {
  ModelSpec model;
  SchemeKind scheme = SchemeKind::TamedEuler;
  SchemeKind proxy_scheme = SchemeKind::TamedEuler;
  std::vector<std::int64_t> step_counts;  // coarse grids, must divide proxy_steps
  std::int64_t proxy_steps = 1 << 14;
  double horizon = 2.0;
  Eigen::Index n_particles = 500;
  int seed_batches = 8;
  std::uint64_t seed_base = 0;
  double taming_alpha = 0.5;
  double solver_tol = 1e-10;
  int solver_max_iter = 50;
  bool stepsize_guard = true;
  // Points with RMSE below floor_factor times the proxy's self-discretization
  // error estimate are kept in the table but excluded from the fit.
  double floor_factor = 10.0;
};

struct ConvergencePoint {
  std::int64_t n_steps = 0;
  double h = 0.0;
  double rmse = 0.0;
  double wall_seconds = 0.0;
  bool in_fit = true;
};

struct ConvergenceStudy {
  ConvergenceSpec spec;
  std::vector<ConvergencePoint> points;
  double proxy_error_estimate = 0.0;  // RMSE(proxy/2 vs proxy)
  double slope = 0.0;                 // of log RMSE vs log h
  double fit_residual = 0.0;          // RMS residual of the fit
};

ConvergenceStudy strong_rate(const ConvergenceSpec& spec, ThreadPool* pool = nullptr);

// Least-squares slope of y against x; returns {slope, rms_residual}.
std::pair<double, double> fit_loglog_slope(const std::vector<double>& x,
                                           const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Blow-up frequency of the standard Euler particle system.
// ---------------------------------------------------------------------------

struct BlowupSpec {
  ModelSpec model;
  SchemeKind scheme = SchemeKind::StandardEuler;
  std::vector<Eigen::Index> particle_counts;
  int repetitions = 200;
  double step_size = 0.05;
  double horizon = 2.0;
  std::uint64_t seed_base = 0;
  double divergence_threshold = 1e8;
};

struct BlowupCell {
  Eigen::Index n_particles = 0;
  int repetitions = 0;
  int divergences = 0;
  // Steps between the first particle divergence and the step where more than
  // half of the ensemble has diverged, for each diverged run that reached a
  // majority.
  std::vector<std::int64_t> corruption_lags;
};

struct BlowupStudy {
  BlowupSpec spec;
  std::vector<BlowupCell> cells;
};

BlowupStudy blowup_frequency(const BlowupSpec& spec, ThreadPool* pool = nullptr);

// ---------------------------------------------------------------------------
// Explicit-vs-implicit wall-clock scan over dimension and particle count.
// ---------------------------------------------------------------------------

struct TimingSpec {
  std::vector<int> dims;
  std::vector<Eigen::Index> particle_counts;
  SchemeKind scheme_a = SchemeKind::TamedEuler;
  SchemeKind scheme_b = SchemeKind::ImplicitEuler;
  double step_size = 0.05;
  double horizon = 1.0;
  int repetitions = 3;  // median is reported
  std::uint64_t seed_base = 0;
  double gl_sigma = 1.5;
  double gl_coupling = 0.5;
};

struct TimingCell {
  int dim = 0;
  Eigen::Index n_particles = 0;
  double seconds_a = 0.0;
  double seconds_b = 0.0;
  double ratio_b_over_a = 0.0;
};

struct TimingStudy {
  TimingSpec spec;
  std::vector<TimingCell> cells;
  // Fitted exponent of median time vs dimension, per particle count.
  std::vector<std::pair<Eigen::Index, double>> exponent_a;
  std::vector<std::pair<Eigen::Index, double>> exponent_b;
};

TimingStudy timing_scan(const TimingSpec& spec, ThreadPool* pool = nullptr);

// ---------------------------------------------------------------------------
// Terminal-time density estimates for selected coordinates.
// ---------------------------------------------------------------------------

struct DensitySpec {
  ModelSpec model;
  SchemeConfig scheme;
  Eigen::Index n_particles = 1000;
  std::uint64_t seed = 0;
  double bandwidth = 0.15;
  std::vector<int> coords;  // 1-based coordinate selection
  Eigen::Index grid_points = 201;
};

struct DensityFigure {
  std::vector<DensityEstimate> marginals;     // one per requested coordinate
  std::optional<DensityEstimate2d> joint;     // when exactly two coords requested
  SimulationResult simulation;
};

DensityFigure density_figure(const DensitySpec& spec, ThreadPool* pool = nullptr);

}  // namespace mvsde::harness
