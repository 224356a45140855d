#ifndef REJECTRON_KERNEL_HPP
#define REJECTRON_KERNEL_HPP

#include <cstddef>
#include <vector>

#include "rejectron/feature_vector.hpp"
#include "rejectron/linear.hpp"
#include "rejectron/losses.hpp"
#include "rejectron/rng.hpp"

namespace rejectron {

enum class KernelKind { linear, polynomial, rbf };

struct KernelSpec {
  KernelKind kind = KernelKind::linear;
  int degree = 2;       // polynomial only
  double coef0 = 1.0;   // polynomial only
  double width = 1.0;   // rbf only

  void validate() const;
};

double kernel_eval(const KernelSpec& spec, const SparseVector& a, const SparseVector& b);

struct Support {
  SparseVector x;
  double coeff = 0.0;
};

// f(x) = sum_i coeff_i * K(x_i, x); zero coefficients are never stored
struct KernelModel {
  std::vector<Support> supports;
  RejectionWidth rho{1.0};
  KernelSpec kernel;
  std::size_t dim = 0;
};

KernelModel init_kernel_model(std::size_t dim, const KernelSpec& spec);

double kernel_predict_value(const KernelModel& model, const SparseVector& x);
Prediction kernel_predict(const KernelModel& model, const SparseVector& x);

StepOutcome kernel_dral_step(KernelModel& model, const SparseVector& x, int y, double d,
                             double eta);

StepOutcome kernel_dsal_step(KernelModel& model, const SparseVector& x, int y,
                             const HyperParams& hp, double eta, SeededRng& rng);

}

#endif
