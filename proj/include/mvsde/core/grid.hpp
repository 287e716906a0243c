#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mvsde {

// Projection onto the step grid {0, h, 2h, ..., Mh}: the largest grid point
// <= t. The result is returned as k*h with integer k, so repeated projection
// is a no-op. A relative nudge of 1e-9 absorbs the rounding noise of k*h/h.
inline double grid_projection(double t, double h, double T) {
  if (!(h > 0.0) || !(T > 0.0))
    throw std::invalid_argument("grid_projection: h and T must be positive");
  const double steps = T / h;
  const std::int64_t m = std::llround(steps);
  if (m < 1 || std::abs(steps - static_cast<double>(m)) > 1e-12 * steps)
    throw std::invalid_argument("grid_projection: h does not divide T");
  if (t < 0.0 || t > T * (1.0 + 1e-12))
    throw std::domain_error("grid_projection: t outside [0, T]");
  std::int64_t k = static_cast<std::int64_t>(std::floor(t / h + 1e-9));
  if (k < 0) k = 0;
  if (k > m) k = m;
  return static_cast<double>(k) * h;
}

}  // namespace mvsde
