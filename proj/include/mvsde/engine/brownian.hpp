#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "mvsde/core/rng.hpp"
#include "mvsde/core/types.hpp"

namespace mvsde {

// Brownian increments on the step grid, keyed by (seed, particle, fine step,
// component). Increments are always drawn on the finest requested grid; a
// coarser consumer receives the exact sum of the fine increments its step
// spans. Two sources with the same seed and fine grid therefore produce
// pathwise-consistent increments at any nested resolution, and the draws do
// not depend on the scheme consuming them.
class BrownianSource {
 public:
  // Increments at the native resolution n_steps.
  BrownianSource(std::uint64_t seed, int bm_dim, std::int64_t n_steps,
                 double horizon)
      : BrownianSource(seed, bm_dim, n_steps, horizon, n_steps) {}

  // Increments at resolution n_steps aggregated from fine_steps.
  BrownianSource(std::uint64_t seed, int bm_dim, std::int64_t n_steps,
                 double horizon, std::int64_t fine_steps)
      : seed_(seed),
        bm_dim_(bm_dim),
        n_steps_(n_steps),
        fine_steps_(fine_steps),
        ratio_(fine_steps / n_steps),
        sqrt_fine_h_(std::sqrt(horizon / static_cast<double>(fine_steps))) {
    if (n_steps < 1 || fine_steps < n_steps || fine_steps % n_steps != 0)
      throw std::invalid_argument(
          "BrownianSource: coarse step count must divide the fine step count");
  }

  std::int64_t n_steps() const { return n_steps_; }

  // Increment over [k h, (k+1) h) for one particle; dw has bm_dim entries.
  void increment(Eigen::Index particle, std::int64_t step, VecRef dw) const {
    const RngStream stream(seed_, StreamPurpose::BrownianPath,
                           static_cast<std::uint64_t>(particle));
    dw.setZero();
    const std::int64_t fine_begin = step * ratio_;
    for (std::int64_t j = fine_begin; j < fine_begin + ratio_; ++j) {
      for (int a = 0; a < bm_dim_; ++a) {
        dw(a) += sqrt_fine_h_ *
                 stream.normal_at(static_cast<std::uint64_t>(j * bm_dim_ + a));
      }
    }
  }

 private:
  std::uint64_t seed_;
  int bm_dim_;
  std::int64_t n_steps_;
  std::int64_t fine_steps_;
  std::int64_t ratio_;
  double sqrt_fine_h_;
};

}  // namespace mvsde
