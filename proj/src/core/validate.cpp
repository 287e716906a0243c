#include "mvsde/core/validate.hpp"

#include <algorithm>
#include <cmath>

namespace mvsde {

namespace {

double onesided_ratio(const ModelSpec& model, double t, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& xp, const MeasureView& mu_x,
                      const MeasureView& mu_xp) {
  Eigen::VectorXd bx(model.dim), bxp(model.dim);
  model.drift(t, x, mu_x, bx);
  model.drift(t, xp, mu_xp, bxp);
  const double dist2 = (x - xp).squaredNorm();
  return (x - xp).dot(bx - bxp) / dist2;
}

}  // namespace

ProbeReport validate_model(const ModelSpec& model, int n_probes,
                           std::uint64_t seed, ProbeOptions options) {
  model.check();
  if (n_probes < 1) throw std::invalid_argument("validate_model: n_probes >= 1");

  ProbeReport report;
  report.n_probes = n_probes;
  report.declared_onesided = model.lipschitz_onesided;
  report.max_ratio_fixed_measure = -std::numeric_limits<double>::infinity();
  report.max_ratio_coupled_measure = -std::numeric_limits<double>::infinity();

  RngStream rng(seed, StreamPurpose::Probe, 0);
  const int d = model.dim;

  for (int p = 0; p < n_probes; ++p) {
    const double t = rng.next_uniform();
    Eigen::VectorXd x(d), xp(d);
    for (int k = 0; k < d; ++k) x(k) = options.point_scale * rng.next_normal();
    do {
      for (int k = 0; k < d; ++k) xp(k) = options.point_scale * rng.next_normal();
    } while ((x - xp).squaredNorm() == 0.0);

    const int n_snap = std::min(
        options.max_snapshot,
        1 + static_cast<int>(rng.next_uniform() * options.max_snapshot));
    Positions snap(n_snap, d);
    for (int i = 0; i < n_snap; ++i)
      for (int k = 0; k < d; ++k) snap(i, k) = options.point_scale * rng.next_normal();

    {
      MeasureView mu(snap);
      const double r = onesided_ratio(model, t, x, xp, mu, mu);
      report.max_ratio_fixed_measure = std::max(report.max_ratio_fixed_measure, r);
    }
    {
      Positions snap_x = snap, snap_xp = snap;
      snap_x.row(0) = x.transpose();
      snap_xp.row(0) = xp.transpose();
      MeasureView mu_x(snap_x), mu_xp(snap_xp);
      const double r = onesided_ratio(model, t, x, xp, mu_x, mu_xp);
      report.max_ratio_coupled_measure = std::max(report.max_ratio_coupled_measure, r);
    }
  }

  const double tolerance_line =
      model.lipschitz_onesided + 0.05 * std::abs(model.lipschitz_onesided);
  if (report.max_ratio_coupled_measure > tolerance_line) {
    report.exceeded = true;
    report.warnings.push_back(
        "observed one-sided ratio " + std::to_string(report.max_ratio_coupled_measure) +
        " exceeds declared L_b " + std::to_string(model.lipschitz_onesided) +
        " by more than 5%");
  }
  return report;
}

}  // namespace mvsde
