#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvsde/core/types.hpp"

namespace mvsde {

// Randomized sanity probe of the declared one-sided Lipschitz constant.
//
// Each probe draws t, a pair (x, x'), and a small ensemble snapshot, then
// measures <x - x', b(t,x,.) - b(t,x',.)> / |x - x'|^2 two ways: with the
// snapshot held fixed for both evaluations, and with the probe point spliced
// into the snapshot (so measure feedback through the coupling is visible).
// The probe reports; it never rejects a model, since the constants are
// user-declared metadata.
struct ProbeReport {
  int n_probes = 0;
  double max_ratio_fixed_measure = 0.0;
  double max_ratio_coupled_measure = 0.0;
  double declared_onesided = 0.0;
  bool exceeded = false;  // coupled ratio above declared by more than 5%
  std::vector<std::string> warnings;
};

struct ProbeOptions {
  double point_scale = 2.0;  // probe points ~ N(0, scale^2 I)
  int max_snapshot = 8;      // snapshot sizes drawn uniformly from 1..max
};

ProbeReport validate_model(const ModelSpec& model, int n_probes,
                           std::uint64_t seed, ProbeOptions options = {});

}  // namespace mvsde
