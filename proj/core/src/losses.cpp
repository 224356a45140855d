#include "rejectron/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace rejectron {

HyperParams::HyperParams(double d, double gamma) : d_(d), gamma_(gamma) {
  if (!std::isfinite(d) || d <= 0.0 || d >= 0.5)
    throw std::invalid_argument("rejection cost d must lie in (0, 0.5)");
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw std::invalid_argument("sigmoid steepness gamma must be positive");
}

Margin::Margin(double value) : value_(value) {
  if (!std::isfinite(value)) throw std::invalid_argument("margin must be finite");
}

RejectionWidth::RejectionWidth(double rho) : rho_(rho) {
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("rejection width must be finite and nonnegative");
}

double sigmoid(double a, double gamma) {
  const double z = gamma * a;
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

double zero_d_one_loss(Margin margin, RejectionWidth rho, double d) {
  const double u = margin.value();
  const double r = rho.value();
  if (u < -r) return 1.0;
  if (u <= r) return d;
  return 0.0;
}

namespace {

double pos(double a) { return a > 0.0 ? a : 0.0; }

}

double double_ramp_loss(Margin margin, RejectionWidth rho, double d) {
  const double u = margin.value();
  const double r = rho.value();
  return d * (pos(1.0 - u + r) - pos(-1.0 - u + r)) +
         (1.0 - d) * (pos(1.0 - u - r) - pos(-1.0 - u - r));
}

double double_sigmoid_loss(Margin margin, RejectionWidth rho, const HyperParams& hp) {
  const double u = margin.value();
  const double r = rho.value();
  return 2.0 * hp.d() * sigmoid(u - r, hp.gamma()) +
         2.0 * (1.0 - hp.d()) * sigmoid(u + r, hp.gamma());
}

DsGradient ds_gradient(Margin margin, RejectionWidth rho, const HyperParams& hp) {
  const double u = margin.value();
  const double r = rho.value();
  const double g = hp.gamma();
  const double s1 = sigmoid(u - r, g);
  const double s2 = sigmoid(u + r, g);
  const double a1 = hp.d() * s1 * (1.0 - s1);
  const double a2 = (1.0 - hp.d()) * s2 * (1.0 - s2);
  return DsGradient{-2.0 * g * (a1 + a2), 2.0 * g * (a1 - a2)};
}

double smoothness_constant(double gamma, double feature_norm_bound) {
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw std::invalid_argument("sigmoid steepness gamma must be positive");
  if (!std::isfinite(feature_norm_bound) || feature_norm_bound < 0.0)
    throw std::invalid_argument("feature norm bound must be nonnegative");
  const double r2 = feature_norm_bound * feature_norm_bound;
  return gamma * gamma * (r2 + 1.0) / 5.0;
}

}
