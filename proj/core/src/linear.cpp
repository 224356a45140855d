#include "rejectron/linear.hpp"

#include <cmath>
#include <stdexcept>

#include "rejectron/query.hpp"

namespace rejectron {

void StepSchedule::validate() const {
  if (!std::isfinite(eta0) || eta0 <= 0.0) throw std::invalid_argument("eta0 must be positive");
  if (!std::isfinite(decrement) || decrement < 0.0)
    throw std::invalid_argument("eta decrement must be nonnegative");
  if (!std::isfinite(floor) || floor <= 0.0)
    throw std::invalid_argument("eta floor must be positive");
  if (floor > eta0) throw std::invalid_argument("eta floor must not exceed eta0");
}

double StepSchedule::eta_at(std::uint64_t t) const {
  const double eta = eta0 - decrement * static_cast<double>(t);
  return eta > floor ? eta : floor;
}

LinearModel init_model(std::size_t dim, LearnerVariant) {
  if (dim == 0) throw std::invalid_argument("model dimension must be at least 1");
  return LinearModel{std::vector<double>(dim, 0.0), RejectionWidth{1.0}};
}

double predict_value(const LinearModel& model, const SparseVector& x) {
  return x.dot_dense(model.w);
}

Prediction predict(const LinearModel& model, const SparseVector& x) {
  const double f = predict_value(model, x);
  if (f > model.rho.value()) return Prediction::positive;
  if (f < -model.rho.value()) return Prediction::negative;
  return Prediction::reject;
}

namespace {

void check_label(int y) {
  if (y != 1 && y != -1) throw std::invalid_argument("label must be +1 or -1");
}

void check_eta(double eta) {
  if (!std::isfinite(eta) || eta <= 0.0) throw std::invalid_argument("step size must be positive");
}

void check_d(double d) {
  if (!std::isfinite(d) || d <= 0.0 || d >= 0.5)
    throw std::invalid_argument("rejection cost d must lie in (0, 0.5)");
}

// clamps a candidate width to [0, inf); reports whether clamping fired
RejectionWidth project_rho(double rho, bool* projected) {
  if (rho < 0.0) {
    *projected = true;
    return RejectionWidth{0.0};
  }
  return RejectionWidth{rho};
}

}

StepOutcome dral_step(LinearModel& model, const SparseVector& x, int y, double d, double eta,
                      SeededRng& rng) {
  check_label(y);
  check_d(d);
  check_eta(eta);
  (void)rng.next_unit();  // one draw per trial keeps streams aligned across learners

  const double f = predict_value(model, x);
  const double rho = model.rho.value();
  const double yf = y * f;

  StepOutcome out;
  out.loss_d = zero_d_one_loss(Margin{yf}, model.rho, d);
  out.loss_surrogate = double_ramp_loss(Margin{yf}, model.rho, d);
  out.queried = dral_query(f, model.rho);
  if (!out.queried) return out;

  if (yf >= rho - 1.0 && yf <= rho + 1.0) {
    const double step = eta * d;
    x.add_scaled_to(model.w, step * y);
    model.rho = project_rho(rho - step, &out.rho_projected);
    out.updated = true;
    out.branch = UpdateBranch::upper_ramp;
  } else if (yf >= -rho - 1.0 && yf <= -rho + 1.0) {
    const double step = eta * (1.0 - d);
    x.add_scaled_to(model.w, step * y);
    model.rho = project_rho(rho + step, &out.rho_projected);
    out.updated = true;
    out.branch = UpdateBranch::lower_ramp;
  }
  return out;
}

namespace {

StepOutcome sigmoid_step(LinearModel& model, const SparseVector& x, int y, const HyperParams& hp,
                         double eta, double f, bool update) {
  const double rho = model.rho.value();
  const double yf = y * f;

  StepOutcome out;
  out.loss_d = zero_d_one_loss(Margin{yf}, model.rho, hp.d());
  out.loss_surrogate = double_sigmoid_loss(Margin{yf}, model.rho, hp);
  const DsGradient g = ds_gradient(Margin{yf}, model.rho, hp);
  out.grad_norm_sq = g.margin * g.margin * x.norm_sq() + g.rho * g.rho;

  if (update && (g.margin != 0.0 || g.rho != 0.0)) {
    x.add_scaled_to(model.w, -eta * y * g.margin);
    model.rho = project_rho(rho - eta * g.rho, &out.rho_projected);
    out.updated = true;
    out.branch = UpdateBranch::gradient;
  }
  return out;
}

}

StepOutcome dsal_step(LinearModel& model, const SparseVector& x, int y, const HyperParams& hp,
                      double eta, SeededRng& rng) {
  check_label(y);
  check_eta(eta);
  const double f = predict_value(model, x);
  const double p = dsal_query_probability(f, model.rho, hp.gamma());
  const bool z = sample_query(p, rng);
  StepOutcome out = sigmoid_step(model, x, y, hp, eta, f, z);
  out.queried = z;
  return out;
}

StepOutcome dsol_step(LinearModel& model, const SparseVector& x, int y, const HyperParams& hp,
                      double eta) {
  check_label(y);
  check_eta(eta);
  StepOutcome out = sigmoid_step(model, x, y, hp, eta, predict_value(model, x), true);
  out.queried = true;
  return out;
}

}
