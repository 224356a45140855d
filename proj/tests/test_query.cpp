#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rejectron/query.hpp"
#include "rejectron/rng.hpp"

using namespace rejectron;

TEST_CASE("splitmix64 reference vectors") {
  CHECK(splitmix64(0) == 16294208416658607535ull);
  CHECK(splitmix64(42) == 13679457532755275413ull);
  CHECK(derive_seed(0, 0) == 16294208416658607535ull);
  CHECK(derive_seed(0, 1) == 7960286522194355700ull);
  CHECK(derive_seed(42, 0) == 13679457532755275413ull);
  CHECK(derive_seed(42, 3) == 6349198060258255764ull);
}

TEST_CASE("seeded rng determinism and mappings") {
  SeededRng a(42);
  CHECK(a.next_u64() == 2576493707698874361ull);
  CHECK(a.next_u64() == 17880808640956396325ull);

  SeededRng b(42);
  CHECK(b.next_unit() == doctest::Approx(0.13967200376411748).epsilon(1e-15));

  SeededRng c(42), d(42);
  for (int i = 0; i < 1000; ++i) CHECK(c.next_u64() == d.next_u64());

  SeededRng e(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = e.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const std::uint64_t k = e.next_below(10);
    CHECK(k < 10);
  }
  CHECK_THROWS_AS(e.next_below(0), std::invalid_argument);
}

TEST_CASE("dral query band") {
  CHECK(dral_query(1.0, RejectionWidth(1.0)));
  CHECK_FALSE(dral_query(2.5, RejectionWidth(1.0)));
  CHECK_FALSE(dral_query(0.0, RejectionWidth(2.0)));

  CHECK(dral_query(2.0, RejectionWidth(1.0)));
  CHECK(dral_query(-2.0, RejectionWidth(1.0)));
  CHECK(dral_query(0.0, RejectionWidth(1.0)));
  CHECK(dral_query(1.0, RejectionWidth(2.0)));
  CHECK(dral_query(-3.0, RejectionWidth(2.0)));
  CHECK_FALSE(dral_query(std::nextafter(3.0, 4.0), RejectionWidth(2.0)));
  CHECK_FALSE(dral_query(std::nextafter(1.0, 0.0), RejectionWidth(2.0)));

  for (double f = 0.0; f <= 1.5 + 1e-9; f += 0.125) {
    CHECK(dral_query(f, RejectionWidth(0.5)));
    CHECK(dral_query(-f, RejectionWidth(0.5)));
  }
  CHECK_FALSE(dral_query(1.625, RejectionWidth(0.5)));
}

TEST_CASE("dsal query probability") {
  CHECK(dsal_query_probability(1.0, RejectionWidth(1.0), 2.0) == 1.0);
  CHECK(dsal_query_probability(-0.5, RejectionWidth(0.5), 3.0) == 1.0);
  CHECK(dsal_query_probability(2.0, RejectionWidth(1.0), 2.0) ==
        doctest::Approx(0.4199743416140261).epsilon(1e-12));
  CHECK(dsal_query_probability(50.0, RejectionWidth(1.0), 2.0) ==
        doctest::Approx(0.0).epsilon(1e-12));

  SeededRng rng(3);
  for (int i = 0; i < 500; ++i) {
    const double rho = 3.0 * rng.next_unit();
    const double gamma = 0.5 + 3.5 * rng.next_unit();
    const double u = 4.0 * rng.next_unit();
    const double above = dsal_query_probability(rho + u, RejectionWidth(rho), gamma);
    const double below = dsal_query_probability(std::fabs(rho - u), RejectionWidth(rho), gamma);
    if (rho - u >= 0.0) CHECK(above == doctest::Approx(below).epsilon(1e-12));
    CHECK(above > 0.0);
    CHECK(above <= 1.0);
  }
}

TEST_CASE("sample query edge probabilities") {
  SeededRng rng(5);
  for (int i = 0; i < 200; ++i) CHECK(sample_query(1.0, rng));
  for (int i = 0; i < 200; ++i) CHECK_FALSE(sample_query(0.0, rng));
  CHECK_THROWS_AS(sample_query(-0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_query(1.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_query(std::nan(""), rng), std::invalid_argument);
}

TEST_CASE("sample query empirical mean") {
  SeededRng rng(42);
  int hits = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) hits += sample_query(0.5, rng) ? 1 : 0;
  const double mean = static_cast<double>(hits) / n;
  CHECK(std::fabs(mean - 0.5) <= 0.01);
}

TEST_CASE("sample query consumes exactly one draw") {
  SeededRng a(99), b(99);
  (void)sample_query(0.37, a);
  (void)b.next_unit();
  for (int i = 0; i < 32; ++i) CHECK(a.next_u64() == b.next_u64());

  SeededRng c(99), e(99);
  (void)sample_query(1.0, c);
  (void)sample_query(0.0, e);
  CHECK(c.next_u64() == e.next_u64());
}
