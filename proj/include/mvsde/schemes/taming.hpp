#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

namespace mvsde {

// Drift taming b -> b / (1 + M^{-alpha} |b|). The output keeps the direction
// of b and its norm is bounded by min(M^alpha, |b|), which caps the per-step
// drift displacement at h * M^alpha.
template <typename Derived>
auto tame_drift(const Eigen::MatrixBase<Derived>& b_value, std::int64_t n_steps,
                double alpha) {
  using Plain = typename Derived::PlainObject;
  const double damping =
      std::pow(static_cast<double>(n_steps), -alpha) * b_value.norm();
  return Plain(b_value / (1.0 + damping));
}

inline double tame_drift(double b_value, std::int64_t n_steps, double alpha) {
  const double damping =
      std::pow(static_cast<double>(n_steps), -alpha) * std::abs(b_value);
  return b_value / (1.0 + damping);
}

}  // namespace mvsde
