#include "rejectron/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rejectron {

namespace {

void check_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
  }
}

void check_d(double d) {
  if (!std::isfinite(d) || d <= 0.0 || d >= 0.5)
    throw std::invalid_argument("rejection cost d must lie in (0, 0.5)");
}

}

void BoundInputs::validate() const {
  check_positive(W, "W");
  check_positive(R, "R");
  check_d(d);
  check_positive(eta, "eta");
  check_positive(gamma, "gamma");
  if (!std::isfinite(rho_star) || rho_star < 0.0)
    throw std::invalid_argument("rho_star must be nonnegative and finite");
}

double lemma8_m1(double rho, double d, double W, double R) {
  check_positive(W, "W");
  check_positive(R, "R");
  check_d(d);
  if (!std::isfinite(rho) || rho <= 0.0)
    throw std::invalid_argument("lemma8_m1 requires rho > 0");
  return std::min(1.0 / rho, 2.0 / (d * (1.0 + rho + W * R)));
}

std::pair<double, double> lemma9_m21_m22(double rho, double d, double W, double R) {
  check_positive(W, "W");
  check_positive(R, "R");
  check_d(d);
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("rho must be nonnegative and finite");
  const double wr = W * R;
  if (wr <= rho) throw std::invalid_argument("lemma9 constants require W*R > rho");
  const double m21 = std::min(2.0 * (2.0 * rho + 1.0) / ((1.0 + d) * (wr + rho + 1.0)),
                              (1.0 + d * (wr - rho)) / ((1.0 + d) * (wr - rho + 1.0)));
  const double m22 = std::max(2.0 / ((wr + rho + 1.0) * (1.0 - d)),
                              ((2.0 - d) * (wr - rho) + 1.0) / ((wr - rho + 1.0) * (wr - rho) * (1.0 - d)));
  return {m21, m22};
}

namespace {

struct Alphas {
  double reject = 0.0;
  double mistake = 0.0;
};

Alphas compute_alphas(const BoundInputs& inp) {
  const auto [m21, m22] = lemma9_m21_m22(inp.rho_star, inp.d, inp.W, inp.R);
  const double r2p1 = inp.R * inp.R + 1.0;
  const double shared = m22 *
                        (1.0 + inp.eta * inp.eta * (1.0 - inp.d) * (1.0 - inp.d) * r2p1 +
                         2.0 * inp.eta * (1.0 - inp.d)) /
                        (2.0 * m21 * inp.eta * (1.0 + inp.d));
  Alphas a;
  a.reject = std::max(
      (1.0 + inp.eta * inp.eta * inp.d * inp.d * r2p1 + 2.0 * inp.eta * inp.d) /
          (2.0 * inp.eta * inp.d),
      shared);
  a.mistake = std::max((inp.eta * inp.d * r2p1 + 2.0) / 2.0, shared);
  return a;
}

double rhs_for_alpha(double alpha, double W, double rho_star) {
  const double miss = 1.0 - alpha * rho_star;
  return alpha * alpha * W * W + miss * miss;
}

}

BoundConstants compute_bound_constants(const BoundInputs& inp) {
  inp.validate();
  BoundConstants c;
  c.m1 = lemma8_m1(inp.rho_star, inp.d, inp.W, inp.R);
  const auto [m21, m22] = lemma9_m21_m22(inp.rho_star, inp.d, inp.W, inp.R);
  c.m21 = m21;
  c.m22 = m22;
  c.m = std::min(c.m1, c.m22);
  const Alphas a = compute_alphas(inp);
  c.alpha_reject = a.reject;
  c.alpha_mistake = a.mistake;
  c.beta = inp.gamma * inp.gamma * (inp.R * inp.R + 1.0) / 5.0;
  return c;
}

TheoremBounds theorem2_bounds(const BoundInputs& inp) {
  inp.validate();
  const Alphas a = compute_alphas(inp);
  return TheoremBounds{rhs_for_alpha(a.reject, inp.W, inp.rho_star),
                       rhs_for_alpha(a.mistake, inp.W, inp.rho_star)};
}

TheoremBounds theorem3_bounds(const BoundInputs& inp, double comparator_loss_sum) {
  if (!std::isfinite(comparator_loss_sum) || comparator_loss_sum < 0.0)
    throw std::invalid_argument("comparator loss sum must be nonnegative and finite");
  const BoundConstants c = compute_bound_constants(inp);
  TheoremBounds b = theorem2_bounds(inp);
  b.reject_rhs += 2.0 * inp.eta * c.alpha_reject / c.m * comparator_loss_sum;
  b.mistake_rhs += 2.0 * inp.eta * c.alpha_mistake / c.m * comparator_loss_sum;
  return b;
}

Outcome classify_outcome(double yf, double rho) {
  if (!std::isfinite(yf)) throw std::invalid_argument("margin must be finite");
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("rho must be nonnegative and finite");
  if (yf >= rho && yf <= rho + 1.0) return Outcome::C;
  if (yf >= rho - 1.0 && yf < rho) return Outcome::R1;
  if (yf >= -rho && yf <= -rho + 1.0) return Outcome::R2;
  if (yf >= -rho - 1.0 && yf < -rho) return Outcome::M;
  return Outcome::none;
}

void OutcomeCounters::record(Outcome outcome, bool queried_trial) {
  if (queried_trial) ++queried;
  switch (outcome) {
    case Outcome::C: ++c; break;
    case Outcome::R1: ++r1; break;
    case Outcome::R2: ++r2; break;
    case Outcome::M: ++m; break;
    case Outcome::none: break;
  }
}

double local_regret(std::span<const double> grad_norm_sq) {
  double s = 0.0;
  for (double v : grad_norm_sq) {
    if (!(v >= 0.0)) throw std::invalid_argument("squared gradient norms must be nonnegative");
    s += v;
  }
  return s;
}

double theorem6_rhs(double gamma, double R, double T) {
  check_positive(gamma, "gamma");
  check_positive(R, "R");
  check_positive(T, "T");
  return 4.0 * gamma * gamma / 5.0 * (R * R + 1.0) * (T + 1.0);
}

double theorem6_eta(double gamma, double R) {
  check_positive(gamma, "gamma");
  check_positive(R, "R");
  return 5.0 / (gamma * gamma * (R * R + 1.0));
}

double corollary7_rhs(double gamma, double R, double T) {
  check_positive(gamma, "gamma");
  check_positive(R, "R");
  check_positive(T, "T");
  return 4.0 * gamma * gamma / 5.0 * (R * R + 1.0) * (1.0 + 1.0 / T);
}

}
