#ifndef REJECTRON_TESTS_RATIONAL_ORACLE_HPP
#define REJECTRON_TESTS_RATIONAL_ORACLE_HPP

#include <gmpxx.h>

#include <algorithm>

// exact-rational re-implementation of the bound formula chain, kept
// deliberately independent of the library's floating-point path
namespace rational_oracle {

struct Inputs {
  mpq_class W;
  mpq_class R;
  mpq_class rho;
  mpq_class d;
  mpq_class eta;
};

struct Constants {
  mpq_class m1;
  mpq_class m21;
  mpq_class m22;
  mpq_class m;
  mpq_class alpha_reject;
  mpq_class alpha_mistake;
  mpq_class reject_rhs;
  mpq_class mistake_rhs;
};

inline mpq_class lemma8_m1(const Inputs& in) {
  const mpq_class a = mpq_class(1) / in.rho;
  const mpq_class b = mpq_class(2) / (in.d * (1 + in.rho + in.W * in.R));
  return std::min(a, b);
}

inline mpq_class lemma9_m21(const Inputs& in) {
  const mpq_class wr = in.W * in.R;
  const mpq_class a = mpq_class(2 * (2 * in.rho + 1)) / ((1 + in.d) * (wr + in.rho + 1));
  const mpq_class b = mpq_class(1 + in.d * (wr - in.rho)) / ((1 + in.d) * (wr - in.rho + 1));
  return std::min(a, b);
}

inline mpq_class lemma9_m22(const Inputs& in) {
  const mpq_class wr = in.W * in.R;
  const mpq_class a = mpq_class(2) / ((wr + in.rho + 1) * (1 - in.d));
  const mpq_class b =
      ((2 - in.d) * (wr - in.rho) + 1) / ((wr - in.rho + 1) * (wr - in.rho) * (1 - in.d));
  return std::max(a, b);
}

inline Constants compute(const Inputs& in) {
  Constants c;
  c.m1 = lemma8_m1(in);
  c.m21 = lemma9_m21(in);
  c.m22 = lemma9_m22(in);
  c.m = std::min(c.m1, c.m22);

  const mpq_class r2p1 = in.R * in.R + 1;
  const mpq_class one_minus_d = 1 - in.d;
  const mpq_class shared =
      c.m22 * (1 + in.eta * in.eta * one_minus_d * one_minus_d * r2p1 + 2 * in.eta * one_minus_d) /
      (2 * c.m21 * in.eta * (1 + in.d));
  const mpq_class reject_own =
      (1 + in.eta * in.eta * in.d * in.d * r2p1 + 2 * in.eta * in.d) / (2 * in.eta * in.d);
  const mpq_class mistake_own = (in.eta * in.d * r2p1 + 2) / 2;
  c.alpha_reject = std::max(reject_own, shared);
  c.alpha_mistake = std::max(mistake_own, shared);

  const mpq_class miss_r = 1 - c.alpha_reject * in.rho;
  const mpq_class miss_m = 1 - c.alpha_mistake * in.rho;
  c.reject_rhs = c.alpha_reject * c.alpha_reject * in.W * in.W + miss_r * miss_r;
  c.mistake_rhs = c.alpha_mistake * c.alpha_mistake * in.W * in.W + miss_m * miss_m;
  return c;
}

inline mpq_class theorem3_add(const Constants& c, const mpq_class& eta, const mpq_class& alpha,
                              const mpq_class& loss_sum) {
  return 2 * eta * alpha / c.m * loss_sum;
}

}

#endif
