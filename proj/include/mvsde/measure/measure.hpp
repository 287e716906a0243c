#pragma once

#include <vector>

#include "mvsde/core/types.hpp"

namespace mvsde {

// Same-index coupling estimate of the Wasserstein-2 distance between two
// empirical measures: ((1/N) sum_j |a_j - b_j|^2)^{1/2}. An upper bound on
// the exact distance.
double w2_coupled(const Positions& a, const Positions& b);

// Exact Wasserstein-2 in one dimension via the sorted quantile coupling.
double w2_exact_1d(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct DensityEstimate {
  Eigen::VectorXd grid;    // sorted evaluation points
  Eigen::VectorXd values;  // nonnegative estimates
  double bandwidth = 0.0;

  // Trapezoidal mass; close to 1 when the grid covers the sample range.
  double mass() const;
};

struct DensityEstimate2d {
  Eigen::VectorXd grid_x;
  Eigen::VectorXd grid_y;
  Eigen::MatrixXd values;  // values(i, j) at (grid_x(i), grid_y(j))
  double bandwidth = 0.0;

  double mass() const;
};

// Gaussian-kernel density estimate on an explicit grid.
DensityEstimate kde_1d(const Eigen::VectorXd& samples, double bandwidth,
                       Eigen::VectorXd grid);

// Uniform grid spanning [min(samples) - pad*bw, max(samples) + pad*bw].
Eigen::VectorXd kde_default_grid(const Eigen::VectorXd& samples, double bandwidth,
                                 Eigen::Index n_points = 256, double pad = 5.0);

// Product Gaussian kernel with the same bandwidth per axis.
DensityEstimate2d kde_2d(const Eigen::VectorXd& samples_x,
                         const Eigen::VectorXd& samples_y, double bandwidth,
                         Eigen::VectorXd grid_x, Eigen::VectorXd grid_y);

// Per-coordinate raw moment (1/N) sum_j x_j^p for even p in {2, 4, 6, 8}.
Eigen::VectorXd moments(const MeasureView& view, int p);

}  // namespace mvsde
