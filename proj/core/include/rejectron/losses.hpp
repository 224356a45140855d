#ifndef REJECTRON_LOSSES_HPP
#define REJECTRON_LOSSES_HPP

namespace rejectron {

// rejection cost d in (0, 0.5) and sigmoid steepness gamma > 0
class HyperParams {
 public:
  HyperParams(double d, double gamma);
  double d() const { return d_; }
  double gamma() const { return gamma_; }

 private:
  double d_;
  double gamma_;
};

// signed margin y * f(x); must be finite
class Margin {
 public:
  explicit Margin(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// half-width of the rejection band; finite and nonnegative
class RejectionWidth {
 public:
  explicit RejectionWidth(double rho);
  double value() const { return rho_; }

 private:
  double rho_;
};

// 1 / (1 + exp(gamma * a)); decreasing in a, overflow-safe for any finite a
double sigmoid(double a, double gamma);

// 0-d-1 loss: 1 on a mistake, d on a rejection (margin == -rho rejects), 0 otherwise
double zero_d_one_loss(Margin margin, RejectionWidth rho, double d);

// double ramp surrogate, piecewise linear with values in [0, 2]
double double_ramp_loss(Margin margin, RejectionWidth rho, double d);

// double sigmoid surrogate, smooth with values in (0, 2)
double double_sigmoid_loss(Margin margin, RejectionWidth rho, const HyperParams& hp);

struct DsGradient {
  double margin = 0.0;  // always <= 0
  double rho = 0.0;
};

// analytic partials of the double sigmoid loss
DsGradient ds_gradient(Margin margin, RejectionWidth rho, const HyperParams& hp);

// Lipschitz constant of ds_gradient over feature norms <= feature_norm_bound
double smoothness_constant(double gamma, double feature_norm_bound);

}

#endif
