#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "rejectron/csv.hpp"
#include "rejectron/data.hpp"
#include "rejectron/losses.hpp"

using namespace rejectron;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content = "") {
    path = (std::filesystem::temp_directory_path() /
            ("rejectron_test_" + std::to_string(::getpid()) + "_" + name))
               .string();
    if (!content.empty()) write_text_file(path, content);
  }
  ~TempFile() { std::remove(path.c_str()); }
};

double witness_margin(const Example& ex, const std::vector<double>& w) {
  return ex.label * ex.x.dot_dense(w);
}

}

TEST_CASE("sparse vector validation and arithmetic") {
  CHECK_THROWS_AS(SparseVector(std::vector<Feature>{{0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector(std::vector<Feature>{{2, 1.0}, {2, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector(std::vector<Feature>{{3, 1.0}, {2, 2.0}}), std::invalid_argument);

  const SparseVector a(std::vector<Feature>{{1, 3.0}, {4, 4.0}});
  CHECK(a.norm() == 5.0);
  CHECK(a.nnz() == 2);
  CHECK(a.max_index() == 4);

  const SparseVector b(std::vector<Feature>{{1, 1.0}, {2, 7.0}, {4, 2.0}});
  CHECK(a.dot_sparse(b) == 11.0);
  CHECK(b.dot_sparse(a) == 11.0);
  CHECK(a.squared_distance(b) == doctest::Approx(4.0 + 49.0 + 4.0).epsilon(1e-12));

  std::vector<double> w{1.0, 1.0, 1.0, 0.5};
  CHECK(a.dot_dense(w) == 5.0);
  a.add_scaled_to(w, 2.0);
  CHECK(w == std::vector<double>{7.0, 1.0, 1.0, 8.5});
}

TEST_CASE("libsvm parsing") {
  TempFile f("parse.libsvm",
             "+1 1:0.5 3:-1.2\n"
             "# a comment\n"
             "\n"
             "0 2:1\n"
             "1 3:2.5\n");
  const Dataset ds = load_libsvm(f.path);
  REQUIRE(ds.size() == 3);
  CHECK(ds.examples[0].label == 1);
  CHECK(ds.examples[0].x ==
        SparseVector(std::vector<Feature>{{1, 0.5}, {3, -1.2}}));
  CHECK(ds.examples[1].label == -1);
  CHECK(ds.examples[1].x == SparseVector(std::vector<Feature>{{2, 1.0}}));
  CHECK(ds.examples[2].label == 1);
  CHECK(ds.dim == 3);
  CHECK(ds.R == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("libsvm parse errors carry line numbers") {
  TempFile bad_value("bad_value.libsvm", "+1 1:0.5\n-1 2:1\n1 3:abc\n");
  try {
    (void)load_libsvm(bad_value.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }

  TempFile bad_index("bad_index.libsvm", "+1 0:5\n");
  CHECK_THROWS_AS(load_libsvm(bad_index.path), ParseError);

  TempFile non_increasing("non_increasing.libsvm", "+1 2:1 2:3\n");
  CHECK_THROWS_AS(load_libsvm(non_increasing.path), ParseError);

  TempFile bad_label("bad_label.libsvm", "2 1:1\n");
  CHECK_THROWS_AS(load_libsvm(bad_label.path), ParseError);

  TempFile mixed("mixed.libsvm", "-1 1:1\n0 2:1\n");
  try {
    (void)load_libsvm(mixed.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }

  TempFile empty("empty.libsvm", "# nothing here\n");
  CHECK_THROWS_AS(load_libsvm(empty.path), std::runtime_error);
  CHECK_THROWS_AS(load_libsvm("/nonexistent/nowhere.libsvm"), std::runtime_error);
}

TEST_CASE("libsvm round trip") {
  const Dataset ds = synthetic_noisy(200, 8, 0.1, 99);
  TempFile f("roundtrip.libsvm");
  save_libsvm(ds, f.path);
  const Dataset back = load_libsvm(f.path);
  REQUIRE(back.size() == ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(back.examples[i].label == ds.examples[i].label);
    CHECK(back.examples[i].x == ds.examples[i].x);
  }
  CHECK(back.dim == ds.dim);
  CHECK(back.R == doctest::Approx(ds.R).epsilon(1e-15));
}

TEST_CASE("finalize dataset invariants") {
  CHECK_THROWS_AS(finalize_dataset({}), std::invalid_argument);
  const Dataset ds = synthetic_separable(100, 5, 0.5, 0.1, 3).data;
  CHECK(ds.dim >= 1);
  CHECK(ds.R > 0.0);
  for (const auto& ex : ds.examples) CHECK(ex.x.norm() <= ds.R + 1e-12);
}

TEST_CASE("normalize unit ball") {
  const Dataset raw = synthetic_noisy(300, 6, 0.1, 7);
  const Dataset unit = normalize(raw, Normalization::unit_ball);
  CHECK(unit.R == doctest::Approx(1.0).epsilon(1e-12));
  double max_norm = 0.0;
  for (const auto& ex : unit.examples) max_norm = std::max(max_norm, ex.x.norm());
  CHECK(max_norm == doctest::Approx(1.0).epsilon(1e-12));

  const Dataset twice = normalize(unit, Normalization::unit_ball);
  for (std::size_t i = 0; i < unit.size(); ++i) {
    const auto& a = unit.examples[i].x.items();
    const auto& b = twice.examples[i].x.items();
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      CHECK(std::fabs(a[k].value - b[k].value) <= 1e-12);
  }

  const Dataset same = normalize(raw, Normalization::none);
  CHECK(same.R == raw.R);
  CHECK(same.examples[0].x == raw.examples[0].x);

  Dataset zero;
  zero.examples.push_back(Example{SparseVector(std::vector<Feature>{{1, 1.0}}), 1});
  zero.dim = 1;
  zero.R = 0.0;
  CHECK_THROWS_AS(normalize(zero, Normalization::unit_ball), std::invalid_argument);
}

TEST_CASE("normalize per feature scale") {
  std::vector<Example> ex;
  ex.push_back(Example{SparseVector(std::vector<Feature>{{1, 2.0}, {2, -8.0}}), 1});
  ex.push_back(Example{SparseVector(std::vector<Feature>{{1, -4.0}, {2, 2.0}}), -1});
  const Dataset ds = finalize_dataset(std::move(ex));
  const Dataset scaled = normalize(ds, Normalization::per_feature_scale);
  CHECK(scaled.examples[0].x.items()[0].value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(scaled.examples[0].x.items()[1].value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(scaled.examples[1].x.items()[0].value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(scaled.examples[1].x.items()[1].value == doctest::Approx(0.25).epsilon(1e-12));
  for (const auto& e : scaled.examples)
    for (const auto& f : e.x.items()) CHECK(std::fabs(f.value) <= 1.0 + 1e-12);
}

TEST_CASE("bias augmentation") {
  const Dataset ds = synthetic_noisy(50, 4, 0.1, 5);
  const Dataset aug = augment_bias(ds);
  CHECK(aug.dim == ds.dim + 1);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& items = aug.examples[i].x.items();
    REQUIRE(!items.empty());
    CHECK(items.back().index == ds.dim + 1);
    CHECK(items.back().value == 1.0);
    CHECK(items.size() == ds.examples[i].x.items().size() + 1);
  }
}

TEST_CASE("synthetic separable witness has exactly zero ramp loss") {
  const auto t0 = std::chrono::steady_clock::now();
  const SyntheticSeparable gen = synthetic_separable(500, 10, 0.5, 0.1, 42);
  const auto elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(elapsed < 1.0);

  REQUIRE(gen.data.size() == 500);
  CHECK(gen.witness_rho == 0.5);
  for (const auto& ex : gen.data.examples) {
    const double m = witness_margin(ex, gen.witness_w);
    CHECK(m >= 0.5 + 1.0 + 0.1 - 1e-9);
    for (double d : {0.1, 0.25, 0.4}) {
      CHECK(double_ramp_loss(Margin(m), RejectionWidth(0.5), d) == 0.0);
    }
    CHECK(ex.x.norm() <= 1.0 + 1e-12);
  }

  const SyntheticSeparable again = synthetic_separable(500, 10, 0.5, 0.1, 42);
  CHECK(again.data.examples[0].x == gen.data.examples[0].x);
  CHECK(again.witness_w == gen.witness_w);
  const SyntheticSeparable other = synthetic_separable(500, 10, 0.5, 0.1, 43);
  CHECK(other.data.examples[0].x != gen.data.examples[0].x);

  CHECK_THROWS_AS(synthetic_separable(10, 5, 4.0, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(synthetic_separable(10, 5, 0.5, 0.0, 1), std::invalid_argument);
}

TEST_CASE("synthetic noisy shape") {
  const Dataset ds = synthetic_noisy(400, 12, 0.1, 11);
  REQUIRE(ds.size() == 400);
  CHECK(ds.dim <= 12);
  for (const auto& ex : ds.examples) {
    CHECK((ex.label == 1 || ex.label == -1));
    for (const auto& f : ex.x.items()) {
      CHECK((f.value == 1.0 || f.value == -1.0));
    }
  }
  const Dataset again = synthetic_noisy(400, 12, 0.1, 11);
  CHECK(again.examples[0].x == ds.examples[0].x);
  CHECK(again.examples[0].label == ds.examples[0].label);
  CHECK_THROWS_AS(synthetic_noisy(10, 5, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(synthetic_noisy(10, 5, -0.1, 1), std::invalid_argument);
}

TEST_CASE("stream with replacement is close to uniform") {
  const Dataset ds = synthetic_noisy(10, 4, 0.1, 2);
  ExampleStream stream(ds, StreamMode::with_replacement, 42);
  std::vector<int> counts(10, 0);
  const int T = 100000;
  for (int t = 0; t < T; ++t) ++counts[stream.next_index()];
  const double expect = T / 10.0;
  const double sigma = std::sqrt(T * 0.1 * 0.9);
  for (int c : counts) CHECK(std::fabs(c - expect) <= 5.0 * sigma);
}

TEST_CASE("stream shuffle epochs covers each example exactly once per epoch") {
  const Dataset ds = synthetic_noisy(25, 4, 0.1, 3);
  ExampleStream stream(ds, StreamMode::shuffle_epochs, 9);
  std::vector<int> counts(25, 0);
  for (int t = 0; t < 50; ++t) ++counts[stream.next_index()];
  for (int c : counts) CHECK(c == 2);

  ExampleStream epoch(ds, StreamMode::shuffle_epochs, 9);
  std::vector<int> first(25, 0);
  for (int t = 0; t < 25; ++t) ++first[epoch.next_index()];
  for (int c : first) CHECK(c == 1);
}

TEST_CASE("stream determinism") {
  const Dataset ds = synthetic_noisy(50, 4, 0.1, 4);
  ExampleStream a(ds, StreamMode::with_replacement, 7);
  ExampleStream b(ds, StreamMode::with_replacement, 7);
  ExampleStream c(ds, StreamMode::with_replacement, 8);
  bool all_same_c = true;
  for (int t = 0; t < 500; ++t) {
    const std::size_t ia = a.next_index();
    CHECK(ia == b.next_index());
    all_same_c = all_same_c && (ia == c.next_index());
  }
  CHECK_FALSE(all_same_c);
}

TEST_CASE("sha256 known vectors") {
  TempFile abc("abc.txt", "abc");
  CHECK(sha256_file(abc.path) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  TempFile empty_name("empty.txt");
  write_text_file(empty_name.path, "");
  CHECK(sha256_file(empty_name.path) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK_THROWS_AS(sha256_file("/nonexistent/nowhere.bin"), std::runtime_error);
}
