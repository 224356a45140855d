#include "rejectron/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "rejectron/query.hpp"

namespace rejectron {

void KernelSpec::validate() const {
  switch (kind) {
    case KernelKind::linear:
      return;
    case KernelKind::polynomial:
      if (degree < 1) throw std::invalid_argument("polynomial degree must be at least 1");
      if (!std::isfinite(coef0)) throw std::invalid_argument("polynomial coef0 must be finite");
      return;
    case KernelKind::rbf:
      if (!std::isfinite(width) || width <= 0.0)
        throw std::invalid_argument("rbf width must be positive");
      return;
  }
  throw std::invalid_argument("unknown kernel kind");
}

double kernel_eval(const KernelSpec& spec, const SparseVector& a, const SparseVector& b) {
  switch (spec.kind) {
    case KernelKind::linear:
      return a.dot_sparse(b);
    case KernelKind::polynomial:
      return std::pow(a.dot_sparse(b) + spec.coef0, spec.degree);
    case KernelKind::rbf:
      return std::exp(-spec.width * a.squared_distance(b));
  }
  throw std::invalid_argument("unknown kernel kind");
}

KernelModel init_kernel_model(std::size_t dim, const KernelSpec& spec) {
  if (dim == 0) throw std::invalid_argument("model dimension must be at least 1");
  spec.validate();
  KernelModel model;
  model.kernel = spec;
  model.dim = dim;
  return model;
}

namespace {

void check_dim(const KernelModel& model, const SparseVector& x) {
  if (x.max_index() > model.dim) throw std::out_of_range("feature index exceeds model dimension");
}

void check_label(int y) {
  if (y != 1 && y != -1) throw std::invalid_argument("label must be +1 or -1");
}

void check_eta(double eta) {
  if (!std::isfinite(eta) || eta <= 0.0) throw std::invalid_argument("step size must be positive");
}

RejectionWidth project_rho(double rho, bool* projected) {
  if (rho < 0.0) {
    *projected = true;
    return RejectionWidth{0.0};
  }
  return RejectionWidth{rho};
}

}

double kernel_predict_value(const KernelModel& model, const SparseVector& x) {
  check_dim(model, x);
  double f = 0.0;
  for (const auto& s : model.supports) f += s.coeff * kernel_eval(model.kernel, s.x, x);
  return f;
}

Prediction kernel_predict(const KernelModel& model, const SparseVector& x) {
  const double f = kernel_predict_value(model, x);
  if (f > model.rho.value()) return Prediction::positive;
  if (f < -model.rho.value()) return Prediction::negative;
  return Prediction::reject;
}

StepOutcome kernel_dral_step(KernelModel& model, const SparseVector& x, int y, double d,
                             double eta) {
  check_label(y);
  check_eta(eta);
  if (!std::isfinite(d) || d <= 0.0 || d >= 0.5)
    throw std::invalid_argument("rejection cost d must lie in (0, 0.5)");

  const double f = kernel_predict_value(model, x);
  const double rho = model.rho.value();
  const double yf = y * f;

  StepOutcome out;
  out.loss_d = zero_d_one_loss(Margin{yf}, model.rho, d);
  out.loss_surrogate = double_ramp_loss(Margin{yf}, model.rho, d);
  out.queried = dral_query(f, model.rho);
  if (!out.queried) return out;

  if (yf >= rho - 1.0 && yf <= rho + 1.0) {
    model.supports.push_back(Support{x, eta * d * y});
    model.rho = project_rho(rho - eta * d, &out.rho_projected);
    out.updated = true;
    out.branch = UpdateBranch::upper_ramp;
  } else if (yf >= -rho - 1.0 && yf <= -rho + 1.0) {
    model.supports.push_back(Support{x, eta * (1.0 - d) * y});
    model.rho = project_rho(rho + eta * (1.0 - d), &out.rho_projected);
    out.updated = true;
    out.branch = UpdateBranch::lower_ramp;
  }
  return out;
}

StepOutcome kernel_dsal_step(KernelModel& model, const SparseVector& x, int y,
                             const HyperParams& hp, double eta, SeededRng& rng) {
  check_label(y);
  check_eta(eta);

  const double f = kernel_predict_value(model, x);
  const double rho = model.rho.value();
  const double yf = y * f;
  const double p = dsal_query_probability(f, model.rho, hp.gamma());
  const bool z = sample_query(p, rng);

  StepOutcome out;
  out.queried = z;
  out.loss_d = zero_d_one_loss(Margin{yf}, model.rho, hp.d());
  out.loss_surrogate = double_sigmoid_loss(Margin{yf}, model.rho, hp);
  const DsGradient g = ds_gradient(Margin{yf}, model.rho, hp);
  out.grad_norm_sq = g.margin * g.margin * kernel_eval(model.kernel, x, x) + g.rho * g.rho;

  if (z && (g.margin != 0.0 || g.rho != 0.0)) {
    const double coeff = -eta * y * g.margin;
    if (coeff != 0.0) model.supports.push_back(Support{x, coeff});
    model.rho = project_rho(rho - eta * g.rho, &out.rho_projected);
    out.updated = true;
    out.branch = UpdateBranch::gradient;
  }
  return out;
}

}
