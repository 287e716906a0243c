#include "mvsde/harness/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mvsde/models/models.hpp"

namespace mvsde::harness {

std::pair<double, double> fit_loglog_slope(const std::vector<double>& x,
                                           const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need at least two points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::log(y[i]) - (intercept + slope * std::log(x[i]));
    ss += r * r;
  }
  return {slope, std::sqrt(ss / n)};
}

namespace {

SchemeConfig scheme_config_for(const ConvergenceSpec& spec, SchemeKind kind,
                               std::int64_t n_steps) {
  SchemeConfig config;
  config.kind = kind;
  config.n_steps = n_steps;
  config.horizon = spec.horizon;
  config.taming_alpha = spec.taming_alpha;
  config.solver_tol = spec.solver_tol;
  config.solver_max_iter = spec.solver_max_iter;
  config.stepsize_guard = spec.stepsize_guard;
  return config;
}

void require_clean(const SimulationResult& result, std::int64_t n_steps,
                   std::uint64_t seed) {
  if (result.diverged)
    throw std::runtime_error("strong_rate: divergence at M=" +
                             std::to_string(n_steps) + ", seed=" +
                             std::to_string(seed));
}

// Mean squared terminal difference accumulated over batches for one level.
struct LevelAccumulator {
  double sum_sq = 0.0;
  std::int64_t count = 0;
  double wall_seconds = 0.0;

  void add(const PathwisePairResult& pair) {
    sum_sq += pair.terminal_difference.squaredNorm();
    count += pair.terminal_difference.size();
    wall_seconds += pair.result_a.elapsed_seconds;
  }

  double rmse() const { return std::sqrt(sum_sq / static_cast<double>(count)); }
};

}  // namespace

ConvergenceStudy strong_rate(const ConvergenceSpec& spec, ThreadPool* pool) {
  if (spec.step_counts.empty())
    throw std::invalid_argument("strong_rate: empty step count list");
  for (const std::int64_t m : spec.step_counts) {
    if (m < 1 || spec.proxy_steps % m != 0)
      throw std::invalid_argument(
          "strong_rate: every step count must divide proxy_steps");
  }
  if (spec.seed_batches < 1)
    throw std::invalid_argument("strong_rate: seed_batches must be >= 1");

  ConvergenceStudy study;
  study.spec = spec;

  SimulationRun base;
  base.model = spec.model;
  base.n_particles = spec.n_particles;

  const SchemeConfig proxy =
      scheme_config_for(spec, spec.proxy_scheme, spec.proxy_steps);

  std::vector<LevelAccumulator> levels(spec.step_counts.size());
  LevelAccumulator floor_level;
  const std::int64_t floor_steps = std::max<std::int64_t>(1, spec.proxy_steps / 2);

  for (int batch = 0; batch < spec.seed_batches; ++batch) {
    base.master_seed = derive_seed(spec.seed_base, 0x636f6e76, batch);

    // Proxy self-error estimate: one extra level at half the proxy grid.
    {
      const SchemeConfig coarse =
          scheme_config_for(spec, spec.proxy_scheme, floor_steps);
      const auto pair = simulate_pathwise_pair(base, coarse, proxy, pool);
      require_clean(pair.result_a, floor_steps, base.master_seed);
      require_clean(pair.result_b, spec.proxy_steps, base.master_seed);
      floor_level.add(pair);
    }

    for (std::size_t level = 0; level < spec.step_counts.size(); ++level) {
      const std::int64_t m = spec.step_counts[level];
      if (m == spec.proxy_steps) continue;  // RMSE identically zero
      const SchemeConfig coarse = scheme_config_for(spec, spec.scheme, m);
      const auto pair = simulate_pathwise_pair(base, coarse, proxy, pool);
      require_clean(pair.result_a, m, base.master_seed);
      require_clean(pair.result_b, spec.proxy_steps, base.master_seed);
      levels[level].add(pair);
    }
  }

  study.proxy_error_estimate = floor_level.rmse();
  const double floor_cut = spec.floor_factor * study.proxy_error_estimate;

  std::vector<double> fit_h, fit_rmse;
  for (std::size_t level = 0; level < spec.step_counts.size(); ++level) {
    const std::int64_t m = spec.step_counts[level];
    ConvergencePoint point;
    point.n_steps = m;
    point.h = spec.horizon / static_cast<double>(m);
    if (m == spec.proxy_steps) {
      point.rmse = 0.0;
      point.in_fit = false;  // coincides with the proxy
    } else {
      point.rmse = levels[level].rmse();
      point.wall_seconds =
          levels[level].wall_seconds / static_cast<double>(spec.seed_batches);
      point.in_fit = point.rmse > floor_cut && point.rmse > 0.0;
    }
    if (point.in_fit) {
      fit_h.push_back(point.h);
      fit_rmse.push_back(point.rmse);
    }
    study.points.push_back(point);
  }

  if (fit_h.size() < 2)
    throw std::runtime_error(
        "strong_rate: fewer than two points above the proxy error floor");
  std::tie(study.slope, study.fit_residual) = fit_loglog_slope(fit_h, fit_rmse);
  return study;
}

BlowupStudy blowup_frequency(const BlowupSpec& spec, ThreadPool* pool) {
  if (spec.particle_counts.empty() || spec.repetitions < 1)
    throw std::invalid_argument("blowup_frequency: empty grid");
  const double steps_real = spec.horizon / spec.step_size;
  const auto n_steps = static_cast<std::int64_t>(std::llround(steps_real));
  if (std::abs(steps_real - static_cast<double>(n_steps)) > 1e-9)
    throw std::invalid_argument("blowup_frequency: step size must divide horizon");

  BlowupStudy study;
  study.spec = spec;

  for (const Eigen::Index n : spec.particle_counts) {
    BlowupCell cell;
    cell.n_particles = n;
    cell.repetitions = spec.repetitions;

    for (int rep = 0; rep < spec.repetitions; ++rep) {
      SimulationRun run;
      run.model = spec.model;
      run.config.kind = spec.scheme;
      run.config.n_steps = n_steps;
      run.config.horizon = spec.horizon;
      run.n_particles = n;
      run.master_seed =
          derive_seed(spec.seed_base, static_cast<std::uint64_t>(n), rep);
      run.divergence_threshold = spec.divergence_threshold;

      const SimulationResult result = simulate(run, pool);
      if (!result.diverged) continue;
      ++cell.divergences;
      if (result.first_divergence_step && result.majority_divergence_step) {
        cell.corruption_lags.push_back(*result.majority_divergence_step -
                                       *result.first_divergence_step);
      }
    }
    study.cells.push_back(std::move(cell));
  }
  return study;
}

TimingStudy timing_scan(const TimingSpec& spec, ThreadPool* pool) {
  if (spec.dims.empty() || spec.particle_counts.empty() || spec.repetitions < 1)
    throw std::invalid_argument("timing_scan: empty grid");
  const double steps_real = spec.horizon / spec.step_size;
  const auto n_steps = static_cast<std::int64_t>(std::llround(steps_real));

  TimingStudy study;
  study.spec = spec;

  auto median_seconds = [&](const ModelSpec& model, SchemeKind kind,
                            Eigen::Index n, std::uint64_t seed) {
    std::vector<double> times;
    for (int rep = 0; rep < spec.repetitions; ++rep) {
      SimulationRun run;
      run.model = model;
      run.config.kind = kind;
      run.config.n_steps = n_steps;
      run.config.horizon = spec.horizon;
      run.n_particles = n;
      run.master_seed = derive_seed(seed, static_cast<std::uint64_t>(kind), rep);
      const SimulationResult result = simulate(run, pool);
      times.push_back(result.elapsed_seconds);
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
  };

  for (const Eigen::Index n : spec.particle_counts) {
    for (const int d : spec.dims) {
      models::GinzburgLandauParams params;
      params.sigma = spec.gl_sigma;
      params.coupling = spec.gl_coupling;
      const ModelSpec model = models::ginzburg_landau_nd(params, d);
      const std::uint64_t seed =
          derive_seed(spec.seed_base, static_cast<std::uint64_t>(d),
                      static_cast<std::uint64_t>(n));

      TimingCell cell;
      cell.dim = d;
      cell.n_particles = n;
      cell.seconds_a = median_seconds(model, spec.scheme_a, n, seed);
      cell.seconds_b = median_seconds(model, spec.scheme_b, n, seed);
      cell.ratio_b_over_a = cell.seconds_b / cell.seconds_a;
      study.cells.push_back(cell);
    }

    if (spec.dims.size() >= 2) {
      std::vector<double> ds, ta, tb;
      for (const auto& cell : study.cells) {
        if (cell.n_particles != n) continue;
        ds.push_back(static_cast<double>(cell.dim));
        ta.push_back(cell.seconds_a);
        tb.push_back(cell.seconds_b);
      }
      study.exponent_a.emplace_back(n, fit_loglog_slope(ds, ta).first);
      study.exponent_b.emplace_back(n, fit_loglog_slope(ds, tb).first);
    }
  }
  return study;
}

DensityFigure density_figure(const DensitySpec& spec, ThreadPool* pool) {
  if (spec.coords.empty())
    throw std::invalid_argument("density_figure: no coordinates requested");
  for (const int c : spec.coords) {
    if (c < 1 || c > spec.model.dim)
      throw std::out_of_range("density_figure: coordinate " + std::to_string(c) +
                              " outside 1.." + std::to_string(spec.model.dim));
  }
  if (!(spec.bandwidth > 0.0))
    throw std::invalid_argument("density_figure: bandwidth must be > 0");

  SimulationRun run;
  run.model = spec.model;
  run.config = spec.scheme;
  run.n_particles = spec.n_particles;
  run.master_seed = spec.seed;

  DensityFigure figure;
  figure.simulation = simulate(run, pool);
  if (figure.simulation.diverged)
    throw std::runtime_error("density_figure: simulation diverged");

  const Positions& terminal = figure.simulation.final_positions;
  for (const int c : spec.coords) {
    const Eigen::VectorXd samples = terminal.col(c - 1);
    Eigen::VectorXd grid =
        kde_default_grid(samples, spec.bandwidth, spec.grid_points);
    figure.marginals.push_back(kde_1d(samples, spec.bandwidth, std::move(grid)));
  }
  if (spec.coords.size() == 2) {
    const Eigen::VectorXd sx = terminal.col(spec.coords[0] - 1);
    const Eigen::VectorXd sy = terminal.col(spec.coords[1] - 1);
    figure.joint = kde_2d(sx, sy, spec.bandwidth,
                          kde_default_grid(sx, spec.bandwidth, spec.grid_points),
                          kde_default_grid(sy, spec.bandwidth, spec.grid_points));
  }
  return figure;
}

}  // namespace mvsde::harness
