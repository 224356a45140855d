#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rejectron/linear.hpp"
#include "rejectron/losses.hpp"
#include "rejectron/query.hpp"

using namespace rejectron;

namespace {

SparseVector vec2(double a, double b) {
  std::vector<Feature> items;
  if (a != 0.0) items.push_back({1, a});
  if (b != 0.0) items.push_back({2, b});
  return SparseVector(items);
}

std::uint64_t seed_with_first_unit_at_least(double p) {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    SeededRng probe(s);
    if (probe.next_unit() >= p) return s;
  }
  throw std::runtime_error("no such seed in range");
}

}

TEST_CASE("step schedule") {
  StepSchedule sched;
  sched.validate();
  CHECK(sched.eta_at(0) == 0.1);
  CHECK(sched.eta_at(1) == doctest::Approx(0.1 - 1e-5).epsilon(1e-12));
  CHECK(sched.eta_at(9900) == doctest::Approx(0.001).epsilon(1e-12));
  CHECK(sched.eta_at(9901) == 0.001);
  CHECK(sched.eta_at(2000000) == 0.001);

  StepSchedule bad = sched;
  bad.eta0 = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = sched;
  bad.decrement = -1e-3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = sched;
  bad.floor = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = sched;
  bad.floor = 0.2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("init model") {
  const LinearModel m = init_model(3, LearnerVariant::dral);
  CHECK(m.w == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(m.rho.value() == 1.0);
  CHECK_THROWS_AS(init_model(0, LearnerVariant::dsal), std::invalid_argument);

  CHECK(predict(m, vec2(0.7, -0.2)) == Prediction::reject);

  LinearModel fresh = init_model(2, LearnerVariant::dral);
  SeededRng rng(1);
  const StepOutcome out = dral_step(fresh, vec2(1.0, 0.0), 1, 0.25, 0.1, rng);
  CHECK(out.queried);
}

TEST_CASE("predict regions") {
  LinearModel m = init_model(2, LearnerVariant::dral);
  m.w = {1.0, 0.0};
  m.rho = RejectionWidth(1.0);
  CHECK(predict(m, vec2(2.0, 0.0)) == Prediction::positive);
  CHECK(predict(m, vec2(-2.0, 0.0)) == Prediction::negative);
  CHECK(predict(m, vec2(0.5, 0.0)) == Prediction::reject);
  CHECK(predict(m, vec2(1.0, 0.0)) == Prediction::reject);
  CHECK(predict(m, vec2(-1.0, 0.0)) == Prediction::reject);

  const SparseVector wide(std::vector<Feature>{{5, 1.0}});
  CHECK_THROWS_AS(predict_value(m, wide), std::out_of_range);
}

TEST_CASE("dral hand trace upper branch") {
  LinearModel m = init_model(2, LearnerVariant::dral);
  SeededRng rng(1);
  const StepOutcome out = dral_step(m, vec2(1.0, 0.0), 1, 0.25, 0.1, rng);
  CHECK(out.queried);
  CHECK(out.updated);
  CHECK(out.branch == UpdateBranch::upper_ramp);
  CHECK(out.loss_d == 0.25);
  CHECK(out.loss_surrogate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(out.grad_norm_sq == 0.0);
  CHECK_FALSE(out.rho_projected);
  CHECK(m.w[0] == doctest::Approx(0.025).epsilon(1e-12));
  CHECK(m.w[1] == 0.0);
  CHECK(m.rho.value() == doctest::Approx(0.975).epsilon(1e-12));
}

TEST_CASE("dral tie break prefers upper branch") {
  LinearModel m = init_model(2, LearnerVariant::dral);
  SeededRng rng(1);
  const StepOutcome out = dral_step(m, vec2(1.0, 0.0), -1, 0.25, 0.1, rng);
  CHECK(out.updated);
  CHECK(out.branch == UpdateBranch::upper_ramp);
  CHECK(m.w[0] == doctest::Approx(-0.025).epsilon(1e-12));
  CHECK(m.rho.value() == doctest::Approx(0.975).epsilon(1e-12));
}

TEST_CASE("dral outside band is a no-op") {
  LinearModel m = init_model(2, LearnerVariant::dral);
  m.w = {5.0, 0.0};
  SeededRng rng(1);
  const StepOutcome out = dral_step(m, vec2(1.0, 0.0), 1, 0.25, 0.1, rng);
  CHECK_FALSE(out.queried);
  CHECK_FALSE(out.updated);
  CHECK(out.branch == UpdateBranch::none);
  CHECK(out.loss_d == 0.0);
  CHECK(m.w == std::vector<double>{5.0, 0.0});
  CHECK(m.rho.value() == 1.0);
}

TEST_CASE("dral lower branch and projection") {
  LinearModel m = init_model(2, LearnerVariant::dral);
  m.w = {1.2, 0.0};
  SeededRng rng(1);
  const StepOutcome out = dral_step(m, vec2(1.0, 0.0), -1, 0.25, 0.1, rng);
  CHECK(out.updated);
  CHECK(out.branch == UpdateBranch::lower_ramp);
  CHECK(m.w[0] == doctest::Approx(1.2 - 0.075).epsilon(1e-12));
  CHECK(m.rho.value() == doctest::Approx(1.075).epsilon(1e-12));

  LinearModel tiny = init_model(1, LearnerVariant::dral);
  tiny.rho = RejectionWidth(0.01);
  SeededRng rng2(1);
  const SparseVector x1(std::vector<Feature>{{1, 1.0}});
  const StepOutcome out2 = dral_step(tiny, x1, 1, 0.25, 0.1, rng2);
  CHECK(out2.updated);
  CHECK(out2.rho_projected);
  CHECK(tiny.rho.value() == 0.0);
}

TEST_CASE("dral consumes exactly one draw per call") {
  LinearModel m = init_model(2, LearnerVariant::dral);
  m.w = {5.0, 0.0};
  SeededRng a(77), b(77);
  (void)dral_step(m, vec2(1.0, 0.0), 1, 0.25, 0.1, a);
  (void)b.next_unit();
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("dsal forced update trace") {
  const HyperParams hp(0.25, 2.0);
  LinearModel m = init_model(2, LearnerVariant::dsal);

  const double p = dsal_query_probability(0.0, m.rho, hp.gamma());
  SeededRng probe(42);
  REQUIRE(probe.next_unit() < p);

  SeededRng rng(42);
  const StepOutcome out = dsal_step(m, vec2(1.0, 0.0), 1, hp, 0.1, rng);
  CHECK(out.queried);
  CHECK(out.updated);
  CHECK(out.branch == UpdateBranch::gradient);
  CHECK(m.w[0] == doctest::Approx(0.04199743416140261).epsilon(1e-12));
  CHECK(m.w[1] == 0.0);
  CHECK(m.rho.value() == doctest::Approx(1.0209987170807013).epsilon(1e-12));

  const double gm = -0.4199743416140261;
  const double gr = -0.20998717080701304;
  CHECK(out.grad_norm_sq == doctest::Approx(gm * gm + gr * gr).epsilon(1e-12));
}

TEST_CASE("dsal skipped update still records gradient telemetry") {
  const HyperParams hp(0.25, 2.0);
  LinearModel m = init_model(2, LearnerVariant::dsal);
  const double p = dsal_query_probability(0.0, m.rho, hp.gamma());
  const std::uint64_t seed = seed_with_first_unit_at_least(p);

  SeededRng rng(seed);
  const StepOutcome out = dsal_step(m, vec2(1.0, 0.0), 1, hp, 0.1, rng);
  CHECK_FALSE(out.queried);
  CHECK_FALSE(out.updated);
  CHECK(out.grad_norm_sq > 0.0);
  CHECK(m.w == std::vector<double>{0.0, 0.0});
  CHECK(m.rho.value() == 1.0);
}

TEST_CASE("dsal updates whenever the probability peaks") {
  const HyperParams hp(0.25, 2.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    LinearModel m = init_model(1, LearnerVariant::dsal);
    m.w = {1.0};
    SeededRng rng(seed);
    const SparseVector x(std::vector<Feature>{{1, 1.0}});
    const StepOutcome out = dsal_step(m, x, 1, hp, 0.01, rng);
    CHECK(out.queried);
    CHECK(out.updated);
  }
}

TEST_CASE("dsol matches the forced dsal trace and always queries") {
  const HyperParams hp(0.25, 2.0);
  LinearModel m = init_model(2, LearnerVariant::dsol);
  const StepOutcome out = dsol_step(m, vec2(1.0, 0.0), 1, hp, 0.1);
  CHECK(out.queried);
  CHECK(out.updated);
  CHECK(m.w[0] == doctest::Approx(0.04199743416140261).epsilon(1e-12));
  CHECK(m.rho.value() == doctest::Approx(1.0209987170807013).epsilon(1e-12));
}

TEST_CASE("dsol near-zero gamma leaves the model unchanged") {
  const HyperParams hp(0.25, 1e-12);
  LinearModel m = init_model(2, LearnerVariant::dsol);
  m.w = {0.3, -0.4};
  m.rho = RejectionWidth(0.8);
  (void)dsol_step(m, vec2(0.5, 0.5), 1, hp, 0.1);
  CHECK(m.w[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(m.w[1] == doctest::Approx(-0.4).epsilon(1e-12));
  CHECK(m.rho.value() == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("descent sanity under the smoothness step size") {
  SeededRng rng(2024);
  for (int i = 0; i < 500; ++i) {
    const double gamma = 0.5 + 3.5 * rng.next_unit();
    const HyperParams hp(0.05 + 0.4 * rng.next_unit(), gamma);
    const double x0 = -2.0 + 4.0 * rng.next_unit();
    const double x1 = -2.0 + 4.0 * rng.next_unit();
    const SparseVector x = vec2(x0 == 0.0 ? 0.5 : x0, x1);
    const int y = rng.next_unit() < 0.5 ? 1 : -1;

    LinearModel m = init_model(2, LearnerVariant::dsol);
    m.w = {-3.0 + 6.0 * rng.next_unit(), -3.0 + 6.0 * rng.next_unit()};
    m.rho = RejectionWidth(3.0 * rng.next_unit());

    const double beta = smoothness_constant(gamma, x.norm());
    const double eta = 1.0 / beta;
    const double before =
        double_sigmoid_loss(Margin(y * predict_value(m, x)), m.rho, hp);
    (void)dsol_step(m, x, y, hp, eta);
    const double after =
        double_sigmoid_loss(Margin(y * predict_value(m, x)), m.rho, hp);
    CHECK(after <= before + 1e-9);
  }
}

TEST_CASE("updated implies queried on random fuzz") {
  SeededRng rng(31);
  const HyperParams hp(0.25, 2.0);
  LinearModel a = init_model(2, LearnerVariant::dral);
  LinearModel b = init_model(2, LearnerVariant::dsal);
  SeededRng ra(5), rb(6);
  for (int i = 0; i < 2000; ++i) {
    const SparseVector x = vec2(-1.0 + 2.0 * rng.next_unit(), -1.0 + 2.0 * rng.next_unit());
    const int y = rng.next_unit() < 0.5 ? 1 : -1;
    const StepOutcome oa = dral_step(a, x, y, 0.25, 0.05, ra);
    const StepOutcome ob = dsal_step(b, x, y, hp, 0.05, rb);
    if (oa.updated) CHECK(oa.queried);
    if (ob.updated) CHECK(ob.queried);
    CHECK(a.rho.value() >= 0.0);
    CHECK(b.rho.value() >= 0.0);
    CHECK(oa.grad_norm_sq == 0.0);
  }
}

TEST_CASE("label and step validation") {
  LinearModel m = init_model(1, LearnerVariant::dral);
  SeededRng rng(1);
  const SparseVector x(std::vector<Feature>{{1, 1.0}});
  CHECK_THROWS_AS(dral_step(m, x, 0, 0.25, 0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(dral_step(m, x, 2, 0.25, 0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(dral_step(m, x, 1, 0.25, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(dral_step(m, x, 1, 0.6, 0.1, rng), std::invalid_argument);
  const HyperParams hp(0.25, 2.0);
  CHECK_THROWS_AS(dsol_step(m, x, -2, hp, 0.1), std::invalid_argument);
}
