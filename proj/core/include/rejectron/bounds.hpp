#ifndef REJECTRON_BOUNDS_HPP
#define REJECTRON_BOUNDS_HPP

#include <cstdint>
#include <span>
#include <utility>

namespace rejectron {

struct BoundInputs {
  double W = 1.0;         // comparator weight-norm bound
  double R = 1.0;         // feature-norm bound
  double rho_star = 1.0;  // comparator rejection width
  double d = 0.25;
  double eta = 0.1;
  double gamma = 2.0;  // regret constants only

  void validate() const;
};

struct BoundConstants {
  double m1 = 0.0;
  double m21 = 0.0;
  double m22 = 0.0;
  double m = 0.0;  // min(m1, m22)
  double alpha_reject = 0.0;
  double alpha_mistake = 0.0;
  double beta = 0.0;
};

double lemma8_m1(double rho, double d, double W, double R);

// requires W * R > rho
std::pair<double, double> lemma9_m21_m22(double rho, double d, double W, double R);

// all closed-form constants for one input tuple; requires rho_star > 0
BoundConstants compute_bound_constants(const BoundInputs& inp);

struct TheoremBounds {
  double reject_rhs = 0.0;
  double mistake_rhs = 0.0;
};

// separable-case bounds: alpha^2 W^2 + (1 - alpha rho_star)^2 per alpha choice
TheoremBounds theorem2_bounds(const BoundInputs& inp);

// agnostic-case bounds: theorem2 rhs plus (2 eta alpha / m) * comparator_loss_sum
TheoremBounds theorem3_bounds(const BoundInputs& inp, double comparator_loss_sum);

enum class Outcome { C, R1, R2, M, none };

// eq.-style indicator regions with precedence C > R1 > R2 > M and
// half-open lower regions so that exactly one outcome holds
Outcome classify_outcome(double yf, double rho);

struct OutcomeCounters {
  std::uint64_t c = 0;
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;
  std::uint64_t m = 0;
  std::uint64_t queried = 0;

  void record(Outcome outcome, bool queried_trial);
};

// cumulative squared gradient norm over all trials
double local_regret(std::span<const double> grad_norm_sq);

// (4 gamma^2 / 5)(R^2 + 1)(T + 1)
double theorem6_rhs(double gamma, double R, double T);

// the step size mandated by the regret bound: 5 / (gamma^2 (R^2 + 1))
double theorem6_eta(double gamma, double R);

// time-averaged form: (4 gamma^2 / 5)(R^2 + 1)(1 + 1/T)
double corollary7_rhs(double gamma, double R, double T);

}

#endif
