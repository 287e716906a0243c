#include "mvsde/models/models.hpp"

#include <cmath>
#include <stdexcept>

namespace mvsde::models {

ModelSpec ginzburg_landau(const GinzburgLandauParams& params) {
  if (params.sigma < 0.0)
    throw std::invalid_argument("ginzburg_landau: sigma must be >= 0");
  const double s = params.sigma;
  const double c = params.coupling;
  const double x0 = params.x0;

  ModelSpec model;
  model.name = "ginzburg_landau";
  model.dim = 1;
  model.bm_dim = 1;
  model.drift = [s, c](double, ConstVecRef x, const MeasureView& mu, VecRef out) {
    const double v = x(0);
    out(0) = 0.5 * s * s * v - v * v * v + c * mu.mean(0);
  };
  model.diffusion = [s](double, ConstVecRef x, const MeasureView&, MatRef out) {
    out(0, 0) = s * x(0);
  };
  model.diffusion_diagonal = [s](double, ConstVecRef x, const MeasureView&, VecRef out) {
    out(0) = s * x(0);
  };
  model.initial_sampler = [x0](RngStream&) {
    return Eigen::VectorXd::Constant(1, x0);
  };
  model.lipschitz_onesided = 0.5 * s * s + c;
  model.lipschitz_diffusion = s;
  model.poly_growth_q = 2.0;
  // <x,b> + |sigma x|^2/2 <= (s^2 + c) x^2 once the coupled mean is folded
  // into the quadratic term.
  model.monotone_alpha = 0.0;
  model.monotone_beta = s * s + c;
  return model;
}

ModelSpec ginzburg_landau_nd(const GinzburgLandauParams& params, int dim) {
  if (dim < 1) throw std::invalid_argument("ginzburg_landau_nd: dim must be >= 1");
  const double s = params.sigma;
  const double c = params.coupling;
  const double x0 = params.x0;

  ModelSpec model = ginzburg_landau(params);
  model.name = "ginzburg_landau_nd";
  model.dim = dim;
  model.bm_dim = dim;
  model.drift = [s, c](double, ConstVecRef x, const MeasureView& mu, VecRef out) {
    out = 0.5 * s * s * x - x.array().cube().matrix() + c * mu.mean();
  };
  model.diffusion = [s](double, ConstVecRef x, const MeasureView&, MatRef out) {
    out.setZero();
    out.diagonal() = s * x;
  };
  model.diffusion_diagonal = [s](double, ConstVecRef x, const MeasureView&, VecRef out) {
    out = s * x;
  };
  model.initial_sampler = [x0, dim](RngStream&) {
    return Eigen::VectorXd::Constant(dim, x0);
  };
  return model;
}

double neuron_sigma_gate(const NeuronNetworkParams& p, double x1, double x3) {
  if (!(x3 > 0.0 && x3 < 1.0)) return 0.0;  // indicator first
  const double gate_open =
      p.a_r * p.t_max * (1.0 - x3) / (1.0 + std::exp(-p.lambda * (x1 - p.v_t)));
  // The radicand is nonnegative for x3 in [0,1]; clamp away rounding dust.
  const double radicand = std::max(0.0, gate_open + p.a_d * x3);
  const double w = 2.0 * x3 - 1.0;
  double exponent = -p.lambda_gate / (1.0 - w * w);
  if (exponent < -700.0) return 0.0;  // exp would underflow through inf*0
  return std::sqrt(radicand) * p.gamma_scale * std::exp(exponent);
}

ModelSpec neuron_network(const NeuronNetworkParams& params) {
  if (!(params.a_r > 0.0) || !(params.a_d > 0.0) || !(params.t_max > 0.0))
    throw std::invalid_argument("neuron_network: a_r, a_d, T_max must be > 0");
  const NeuronNetworkParams p = params;

  ModelSpec model;
  model.name = "neuron_network";
  model.dim = 3;
  model.bm_dim = 3;
  model.drift = [p](double, ConstVecRef x, const MeasureView& mu, VecRef out) {
    const double x1 = x(0), x2 = x(1), x3 = x(2);
    const double gate_mean = mu.mean(2);
    out(0) = x1 - x1 * x1 * x1 / 3.0 - x2 + p.current -
             p.j * (x1 - p.v_rev) * gate_mean;
    out(1) = p.c * (x1 + p.a - p.b * x2);
    out(2) = p.a_r * p.t_max * (1.0 - x3) /
                 (1.0 + std::exp(-p.lambda * (x1 - p.v_t))) -
             p.a_d * x3;
  };
  model.diffusion = [p](double, ConstVecRef x, const MeasureView& mu, MatRef out) {
    out.setZero();
    out(0, 0) = p.sigma_ext;
    out(0, 2) = -p.sigma_j * (x(0) - p.v_rev) * mu.mean(2);
    out(2, 1) = neuron_sigma_gate(p, x(0), x(2));
  };
  model.initial_sampler = [p](RngStream& rng) {
    Eigen::VectorXd x(3);
    x(0) = p.v0 + std::sqrt(p.sigma_v0) * rng.next_normal();
    x(1) = p.w0 + std::sqrt(p.sigma_w0) * rng.next_normal();
    x(2) = p.y0 + std::sqrt(p.sigma_y0) * rng.next_normal();
    return x;
  };
  model.lipschitz_onesided = 2.0;
  model.lipschitz_diffusion = 1.0;
  model.poly_growth_q = 2.0;
  model.monotone_alpha = 2.0;
  model.monotone_beta = 2.0;
  return model;
}

ModelSpec bistable(const BistablePotentialParams& params) {
  if (params.theta < 0.0)
    throw std::invalid_argument("bistable: theta must be >= 0");
  const double theta = params.theta;
  const double s = params.sigma;
  const double x0 = params.x0;

  ModelSpec model;
  model.name = "bistable";
  model.dim = 1;
  model.bm_dim = 1;
  model.drift = [theta](double, ConstVecRef x, const MeasureView& mu, VecRef out) {
    const double v = x(0);
    out(0) = -v * v * v + v - theta * (v - mu.mean(0));
  };
  model.diffusion = [s](double, ConstVecRef, const MeasureView&, MatRef out) {
    out(0, 0) = s;
  };
  model.diffusion_diagonal = [s](double, ConstVecRef, const MeasureView&, VecRef out) {
    out(0) = s;
  };
  model.initial_sampler = [x0](RngStream&) {
    return Eigen::VectorXd::Constant(1, x0);
  };
  model.lipschitz_onesided = 1.0 + theta;
  model.lipschitz_diffusion = 0.0;
  model.poly_growth_q = 2.0;
  model.monotone_alpha = 0.5 * s * s;
  model.monotone_beta = 1.0 + theta;
  return model;
}

}  // namespace mvsde::models
