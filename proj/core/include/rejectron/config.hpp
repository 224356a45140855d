#ifndef REJECTRON_CONFIG_HPP
#define REJECTRON_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "rejectron/data.hpp"
#include "rejectron/kernel.hpp"
#include "rejectron/linear.hpp"
#include "rejectron/losses.hpp"

namespace rejectron {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LearnerKind { dral, dsal, dsol, kernel_dral, kernel_dsal };

bool is_kernel_learner(LearnerKind kind);
std::string learner_name(LearnerKind kind);

struct SyntheticSpec {
  std::size_t n = 500;
  std::size_t dim = 10;
  double rho_star = 0.5;     // separable only
  double margin_slack = 0.1; // separable only
  double flip_prob = 0.1;    // noisy only
};

struct DatasetSpec {
  enum class Source { path, synthetic_separable, synthetic_noisy };
  Source source = Source::synthetic_separable;
  std::string path;
  std::string expected_sha256;  // optional pin for file sources
  SyntheticSpec synth;
};

struct RunConfig {
  LearnerKind learner = LearnerKind::dral;
  double d = 0.25;
  double gamma = 2.0;
  StepSchedule schedule;
  std::uint64_t T = 10000;
  std::uint32_t repetitions = 100;
  std::uint64_t base_seed = 42;
  DatasetSpec dataset;
  KernelSpec kernel;
  Normalization normalization = Normalization::unit_ball;
  StreamMode stream_mode = StreamMode::with_replacement;
  bool bias = false;
  unsigned jobs = 1;  // CLI flag, not a file key

  HyperParams hyper_params() const { return HyperParams(d, gamma); }
  void validate() const;
};

// flat key=value text; '#' comments and blank lines skipped; unknown or
// duplicate keys rejected; missing keys keep the defaults above
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// canonical key=value rendering of every resolved field (manifest echo)
std::string render_config(const RunConfig& cfg);

// resolves a dataset path directly, then under REJECTRON_DATA_DIR
std::string resolve_dataset_path(const std::string& path);

}

#endif
