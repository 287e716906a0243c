#include "mvsde/measure/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mvsde/core/summation.hpp"

namespace mvsde {

double w2_coupled(const Positions& a, const Positions& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("w2_coupled: sample shapes differ");
  const Positions diff2 = (a - b).cwiseProduct(a - b);
  const double total = colwise_sum_pairwise(diff2).sum();
  return std::sqrt(total / static_cast<double>(a.rows()));
}

double w2_exact_1d(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("w2_exact_1d: sample sizes differ");
  std::vector<double> sa(a.data(), a.data() + a.size());
  std::vector<double> sb(b.data(), b.data() + b.size());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  Positions cols(a.size(), 1);
  for (Eigen::Index j = 0; j < a.size(); ++j) cols(j, 0) = sa[j] - sb[j];
  const double total = colwise_sum_pairwise(cols.cwiseProduct(cols)).sum();
  return std::sqrt(total / static_cast<double>(a.size()));
}

double DensityEstimate::mass() const {
  double m = 0.0;
  for (Eigen::Index i = 0; i + 1 < grid.size(); ++i)
    m += 0.5 * (values(i) + values(i + 1)) * (grid(i + 1) - grid(i));
  return m;
}

double DensityEstimate2d::mass() const {
  double m = 0.0;
  for (Eigen::Index i = 0; i + 1 < grid_x.size(); ++i) {
    for (Eigen::Index j = 0; j + 1 < grid_y.size(); ++j) {
      const double cell = 0.25 * (values(i, j) + values(i + 1, j) +
                                  values(i, j + 1) + values(i + 1, j + 1));
      m += cell * (grid_x(i + 1) - grid_x(i)) * (grid_y(j + 1) - grid_y(j));
    }
  }
  return m;
}

namespace {

inline double gauss_kernel(double u) {
  return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

DensityEstimate kde_1d(const Eigen::VectorXd& samples, double bandwidth,
                       Eigen::VectorXd grid) {
  if (samples.size() == 0) throw std::invalid_argument("kde_1d: empty samples");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("kde_1d: bandwidth must be > 0");

  DensityEstimate est;
  est.bandwidth = bandwidth;
  est.values = Eigen::VectorXd::Zero(grid.size());
  const double norm = 1.0 / (static_cast<double>(samples.size()) * bandwidth);
  for (Eigen::Index g = 0; g < grid.size(); ++g) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < samples.size(); ++j)
      acc += gauss_kernel((grid(g) - samples(j)) / bandwidth);
    est.values(g) = norm * acc;
  }
  est.grid = std::move(grid);
  return est;
}

Eigen::VectorXd kde_default_grid(const Eigen::VectorXd& samples, double bandwidth,
                                 Eigen::Index n_points, double pad) {
  if (samples.size() == 0)
    throw std::invalid_argument("kde_default_grid: empty samples");
  const double lo = samples.minCoeff() - pad * bandwidth;
  const double hi = samples.maxCoeff() + pad * bandwidth;
  return Eigen::VectorXd::LinSpaced(n_points, lo, hi);
}

DensityEstimate2d kde_2d(const Eigen::VectorXd& samples_x,
                         const Eigen::VectorXd& samples_y, double bandwidth,
                         Eigen::VectorXd grid_x, Eigen::VectorXd grid_y) {
  if (samples_x.size() == 0 || samples_x.size() != samples_y.size())
    throw std::invalid_argument("kde_2d: empty or mismatched samples");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("kde_2d: bandwidth must be > 0");

  DensityEstimate2d est;
  est.bandwidth = bandwidth;
  est.values = Eigen::MatrixXd::Zero(grid_x.size(), grid_y.size());
  const double norm =
      1.0 / (static_cast<double>(samples_x.size()) * bandwidth * bandwidth);
  for (Eigen::Index i = 0; i < grid_x.size(); ++i) {
    for (Eigen::Index j = 0; j < grid_y.size(); ++j) {
      double acc = 0.0;
      for (Eigen::Index s = 0; s < samples_x.size(); ++s) {
        acc += gauss_kernel((grid_x(i) - samples_x(s)) / bandwidth) *
               gauss_kernel((grid_y(j) - samples_y(s)) / bandwidth);
      }
      est.values(i, j) = norm * acc;
    }
  }
  est.grid_x = std::move(grid_x);
  est.grid_y = std::move(grid_y);
  return est;
}

Eigen::VectorXd moments(const MeasureView& view, int p) {
  if (p != 2 && p != 4 && p != 6 && p != 8)
    throw std::invalid_argument("moments: p must be one of {2, 4, 6, 8}");
  Positions powered = view.positions();
  powered = powered.array().pow(p).matrix();
  return (colwise_sum_pairwise(powered) / static_cast<double>(view.size()))
      .transpose();
}

}  // namespace mvsde
