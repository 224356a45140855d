#ifndef REJECTRON_LINEAR_HPP
#define REJECTRON_LINEAR_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rejectron/feature_vector.hpp"
#include "rejectron/losses.hpp"
#include "rejectron/rng.hpp"

namespace rejectron {

enum class Prediction { positive, negative, reject };

enum class LearnerVariant { dral, dsal, dsol };

struct LinearModel {
  std::vector<double> w;
  RejectionWidth rho{1.0};
};

// eta_at(t) = max(floor, eta0 - decrement * t) for 0-based trial index t
struct StepSchedule {
  double eta0 = 0.1;
  double decrement = 1e-5;
  double floor = 1e-3;

  void validate() const;
  double eta_at(std::uint64_t t) const;
};

enum class UpdateBranch { none, upper_ramp, lower_ramp, gradient };

struct StepOutcome {
  bool queried = false;
  bool updated = false;
  UpdateBranch branch = UpdateBranch::none;
  double loss_d = 0.0;          // 0-d-1 loss at the pre-update state
  double loss_surrogate = 0.0;  // ramp or sigmoid surrogate at the pre-update state
  double grad_norm_sq = 0.0;    // squared gradient norm, 0 for ramp learners
  bool rho_projected = false;
};

// w = 0, rho = 1 for every variant
LinearModel init_model(std::size_t dim, LearnerVariant variant);

double predict_value(const LinearModel& model, const SparseVector& x);
Prediction predict(const LinearModel& model, const SparseVector& x);

// ramp update inside the query band; consumes exactly one rng draw per call
StepOutcome dral_step(LinearModel& model, const SparseVector& x, int y, double d, double eta,
                      SeededRng& rng);

// Bernoulli-gated gradient step; consumes exactly one rng draw per call
StepOutcome dsal_step(LinearModel& model, const SparseVector& x, int y, const HyperParams& hp,
                      double eta, SeededRng& rng);

// unconditional gradient step; queries every label and consumes no rng draws
StepOutcome dsol_step(LinearModel& model, const SparseVector& x, int y, const HyperParams& hp,
                      double eta);

}

#endif
