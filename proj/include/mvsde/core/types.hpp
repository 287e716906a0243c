#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "mvsde/core/rng.hpp"
#include "mvsde/core/summation.hpp"

namespace mvsde {

// Particle states are stored row-major (one particle per row) so a single
// particle maps onto a contiguous Eigen::Ref without copies.
using Positions =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ConstVecRef = Eigen::Ref<const Eigen::VectorXd>;
using VecRef = Eigen::Ref<Eigen::VectorXd>;
using MatRef = Eigen::Ref<Eigen::MatrixXd>;

class MeasureView;

// Read-only snapshot of the empirical measure held fixed during one step.
// Moments are cached once per step (blocked pairwise reduction, see
// summation.hpp) so coefficient evaluations stay O(1) in N.
class MeasureView {
 public:
  explicit MeasureView(const Positions& positions)
      : positions_(&positions),
        mean_(colwise_mean_pairwise(positions).transpose()),
        second_moment_(
            (colwise_sum_pairwise(positions.cwiseProduct(positions)) /
             static_cast<double>(positions.rows()))
                .transpose()) {}

  Eigen::Index size() const { return positions_->rows(); }
  Eigen::Index dim() const { return positions_->cols(); }
  const Positions& positions() const { return *positions_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  double mean(Eigen::Index coord) const { return mean_(coord); }
  // Per-coordinate raw second moment (1/N) sum_j x_j^2.
  const Eigen::VectorXd& second_moment() const { return second_moment_; }

 private:
  const Positions* positions_;
  Eigen::VectorXd mean_;
  Eigen::VectorXd second_moment_;
};

// Coefficient callbacks write into caller-provided storage; `out` is sized by
// the caller (dim and dim x bm_dim respectively).
using DriftFn =
    std::function<void(double t, ConstVecRef x, const MeasureView& mu, VecRef out)>;
using DiffusionFn =
    std::function<void(double t, ConstVecRef x, const MeasureView& mu, MatRef out)>;
using DiagonalDiffusionFn =
    std::function<void(double t, ConstVecRef x, const MeasureView& mu, VecRef out)>;
using InitialSampler = std::function<Eigen::VectorXd(RngStream& rng)>;

// A model is its coefficients plus user-declared regularity metadata. The
// constants cannot be derived from the callbacks; validate_model only probes
// them (never fatally).
struct ModelSpec {
  std::string name;
  int dim = 1;
  int bm_dim = 1;

  DriftFn drift;
  DiffusionFn diffusion;
  // Optional fast path when the diffusion matrix is diagonal (bm_dim == dim):
  // writes the diagonal only. Must agree with `diffusion`.
  DiagonalDiffusionFn diffusion_diagonal;

  double lipschitz_onesided = 0.0;   // L_b
  double lipschitz_diffusion = 0.0;  // L_sigma
  double poly_growth_q = 1.0;        // q >= 1
  double monotone_alpha = 0.0;
  double monotone_beta = 0.0;

  InitialSampler initial_sampler;

  void check() const {
    if (dim < 1 || bm_dim < 1)
      throw std::invalid_argument("ModelSpec: dim and bm_dim must be >= 1");
    if (!drift || !diffusion || !initial_sampler)
      throw std::invalid_argument("ModelSpec: missing coefficient callback");
    if (poly_growth_q < 1.0)
      throw std::invalid_argument("ModelSpec: poly_growth_q must be >= 1");
  }

  // Largest step admitted by the implicit solvability bound; +inf when the
  // drift is dissipative enough that no constraint applies.
  double implicit_step_limit() const {
    const double m = std::max(lipschitz_onesided, 2.0 * monotone_beta);
    return m > 0.0 ? 1.0 / m : std::numeric_limits<double>::infinity();
  }
};

struct ParticleEnsemble {
  Positions positions;  // N x d
  std::uint64_t master_seed = 0;
  std::int64_t step_index = 0;  // current time = step_index * h

  Eigen::Index size() const { return positions.rows(); }
  Eigen::Index dim() const { return positions.cols(); }

  RngStream stream(StreamPurpose purpose, Eigen::Index particle) const {
    return RngStream(master_seed, purpose, static_cast<std::uint64_t>(particle));
  }
};

enum class SchemeKind { StandardEuler, TamedEuler, ImplicitEuler };

inline const char* scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::StandardEuler: return "standard";
    case SchemeKind::TamedEuler: return "tamed";
    case SchemeKind::ImplicitEuler: return "implicit";
  }
  return "?";
}

struct SchemeConfig {
  SchemeKind kind = SchemeKind::TamedEuler;
  std::int64_t n_steps = 40;  // M
  double horizon = 2.0;       // T
  double taming_alpha = 0.5;  // in (0, 1/2]
  double solver_tol = 1e-10;
  int solver_max_iter = 50;
  bool stepsize_guard = true;

  double step_size() const { return horizon / static_cast<double>(n_steps); }

  void validate(const ModelSpec& model) const {
    if (n_steps < 1) throw std::invalid_argument("SchemeConfig: n_steps must be >= 1");
    if (!(horizon > 0.0)) throw std::invalid_argument("SchemeConfig: horizon must be > 0");
    if (!(taming_alpha > 0.0) || taming_alpha > 0.5)
      throw std::invalid_argument("SchemeConfig: taming_alpha must lie in (0, 1/2]");
    if (!(solver_tol > 0.0)) throw std::invalid_argument("SchemeConfig: solver_tol must be > 0");
    if (solver_max_iter < 1)
      throw std::invalid_argument("SchemeConfig: solver_max_iter must be >= 1");
    if (kind == SchemeKind::ImplicitEuler && stepsize_guard) {
      const double limit = model.implicit_step_limit();
      if (!(step_size() < limit))
        throw std::invalid_argument(
            "SchemeConfig: implicit step size " + std::to_string(step_size()) +
            " violates h < 1/max(L_b, 2*beta) = " + std::to_string(limit));
    }
  }
};

// Per-step summary of the empirical measure.
struct EmpiricalStats {
  std::int64_t step = 0;
  double time = 0.0;
  Eigen::VectorXd mean;           // d
  Eigen::VectorXd second_moment;  // d, per coordinate
  Eigen::Index diverged_count = 0;
};

}  // namespace mvsde
