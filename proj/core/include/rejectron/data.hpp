#ifndef REJECTRON_DATA_HPP
#define REJECTRON_DATA_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rejectron/feature_vector.hpp"
#include "rejectron/rng.hpp"

namespace rejectron {

struct Example {
  SparseVector x;
  int label = 1;  // +1 or -1
};

struct Dataset {
  std::vector<Example> examples;
  std::size_t dim = 0;  // max feature index
  double R = 0.0;       // max Euclidean norm

  std::size_t size() const { return examples.size(); }
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line_number);
  std::size_t line = 0;
};

// LIBSVM sparse text: "<label> <idx>:<val> ...", 1-based strictly increasing
// indices, labels {0,1} or {-1,+1} with 0 mapped to -1, '#' comment lines
// and blank lines skipped
Dataset load_libsvm(const std::string& path);
void save_libsvm(const Dataset& ds, const std::string& path);

// recomputes dim and R from the example list; validates invariants
Dataset finalize_dataset(std::vector<Example> examples);

enum class Normalization { none, unit_ball, per_feature_scale };

Dataset normalize(const Dataset& ds, Normalization mode);

// appends a constant feature 1 at index dim+1 to every example
Dataset augment_bias(const Dataset& ds);

struct SyntheticSeparable {
  Dataset data;
  std::vector<double> witness_w;
  double witness_rho = 0.0;
};

// unit-ball points with witness margin y (w* . x) >= rho_star + 1 + margin_slack,
// so the ramp loss of the witness is exactly zero on every example
SyntheticSeparable synthetic_separable(std::size_t n, std::size_t dim, double rho_star,
                                       double margin_slack, std::uint64_t seed);

// noisy near-linear dataset with {-1,0,1} feature values, shaped like the
// mid-size UCI binary tasks; labels flipped with probability flip_prob
Dataset synthetic_noisy(std::size_t n, std::size_t dim, double flip_prob, std::uint64_t seed);

enum class StreamMode { with_replacement, shuffle_epochs };

// seeded, single-owner index stream over a dataset
class ExampleStream {
 public:
  ExampleStream(const Dataset& ds, StreamMode mode, std::uint64_t seed);

  std::size_t next_index();

 private:
  std::size_t n_;
  StreamMode mode_;
  SeededRng rng_;
  std::vector<std::size_t> perm_;
  std::size_t pos_ = 0;
};

// lowercase hex SHA-256 of a file's bytes
std::string sha256_file(const std::string& path);

}

#endif
