#pragma once

#include "mvsde/core/types.hpp"

namespace mvsde::models {

// Mean-field Ginzburg-Landau:
//   dX = ( (sigma^2/2) X - X^3 + c E[X] ) dt + sigma X dW,   X_0 = x0.
struct GinzburgLandauParams {
  double sigma = 1.5;
  double coupling = 0.5;  // c
  double x0 = 1.0;
};

ModelSpec ginzburg_landau(const GinzburgLandauParams& params);

// Coordinatewise Ginzburg-Landau in d dimensions with mean coupling and
// diagonal multiplicative noise (bm_dim == dim). Used for dimension scans.
ModelSpec ginzburg_landau_nd(const GinzburgLandauParams& params, int dim);

// Three-component neuron network (membrane voltage, recovery, synaptic gate)
// with mean-field synaptic input through the third coordinate.
struct NeuronNetworkParams {
  double v0 = 0.0;
  double sigma_v0 = 0.4;
  double a = 0.7;
  double b = 0.8;
  double c = 0.08;
  double current = 0.5;  // I
  double sigma_ext = 0.5;
  double w0 = 0.5;
  double sigma_w0 = 0.4;
  double v_rev = 1.0;
  double a_r = 1.0;
  double a_d = 1.0;
  double t_max = 1.0;
  double lambda = 0.2;
  double y0 = 0.3;
  double sigma_y0 = 0.05;
  double j = 1.0;
  double sigma_j = 0.2;
  double v_t = 2.0;
  double gamma_scale = 0.1;   // Gamma
  double lambda_gate = 0.5;   // Lambda
};

ModelSpec neuron_network(const NeuronNetworkParams& params);

// Gate-noise amplitude sigma_32; exposed for direct testing. Returns exactly
// 0 outside the open interval x3 in (0,1).
double neuron_sigma_gate(const NeuronNetworkParams& params, double x1, double x3);

// Double-well drift -x^3 + x with optional linear attraction to the mean.
struct BistablePotentialParams {
  double theta = 0.0;  // coupling strength, >= 0
  double sigma = 0.5;  // additive noise level
  double x0 = 0.0;
};

ModelSpec bistable(const BistablePotentialParams& params);

}  // namespace mvsde::models
