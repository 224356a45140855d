#ifndef REJECTRON_HARNESS_HPP
#define REJECTRON_HARNESS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rejectron/bounds.hpp"
#include "rejectron/config.hpp"
#include "rejectron/data.hpp"

namespace rejectron {

// seed derivation scheme, shared by every harness entry point:
//   dataset_seed     = derive_seed(base_seed, 0)
//   rep_seed(i)      = derive_seed(base_seed, 1 + i)
//   stream_seed(rep) = derive_seed(rep_seed, 0)
//   learner_seed(rep)= derive_seed(rep_seed, 1)
std::uint64_t dataset_seed(std::uint64_t base_seed);
std::uint64_t repetition_seed(std::uint64_t base_seed, std::uint32_t rep);

struct TrialRecord {
  std::uint64_t t = 0;  // 1-based trial index
  bool queried = false;
  bool updated = false;
  double f_t = 0.0;  // prediction value before the update
  double loss_d = 0.0;
  Outcome outcome = Outcome::none;
  bool rejected = false;
  bool misclassified = false;
  double rho_t = 0.0;  // width before the update
  double eta_t = 0.0;
  double grad_norm_sq = 0.0;
  bool rho_projected = false;
};

struct PreparedDataset {
  Dataset data;
  std::string source;
  std::string sha256;  // file sources only
  std::vector<double> witness_w;
  double witness_rho = 0.0;
  bool has_witness = false;
};

// generates or loads, applies bias augmentation, then normalization;
// the witness is carried through both transforms
PreparedDataset prepare_dataset(const RunConfig& cfg);
PreparedDataset prepare_dataset(const RunConfig& cfg, std::uint64_t seed);

struct RunResult {
  std::vector<TrialRecord> trials;
  std::vector<double> final_w;      // linear learners
  double final_rho = 1.0;
  std::uint64_t support_size = 0;   // kernel learners
  std::uint64_t rho_projections = 0;
};

RunResult run_once(const RunConfig& cfg, const PreparedDataset& ds, std::uint64_t rep_seed);

// cfg.repetitions runs across cfg.jobs threads; output order is by repetition
std::vector<RunResult> run_repetitions(const RunConfig& cfg, const PreparedDataset& ds);

struct MetricCurve {
  std::vector<double> mean;
  std::vector<double> std_dev;
};

struct RunAggregate {
  MetricCurve risk;                    // running average of loss_d
  MetricCurve fraction_queried;
  MetricCurve fraction_misclassified;
  MetricCurve fraction_rejected;
  MetricCurve risk_vs_labels;          // entry k-1: risk when the k-th label was asked
};

RunAggregate aggregate(const std::vector<RunResult>& runs);

// risk.csv, fraction_queried.csv, fraction_misclassified.csv,
// fraction_rejected.csv, risk_vs_labels.csv, run_manifest.txt
void write_run_outputs(const RunConfig& cfg, const PreparedDataset& ds,
                       const std::vector<RunResult>& runs, const std::string& out_dir);

struct MistakeBoundReport {
  struct Row {
    std::uint32_t rep = 0;
    std::uint64_t reject_count = 0;   // queried-trial R1 + R2
    std::uint64_t mistake_count = 0;  // queried-trial M
    double reject_rhs = 0.0;
    double mistake_rhs = 0.0;
    bool pass = false;
    std::string note;
  };
  std::vector<Row> rows;
  std::uint32_t seeds_total = 0;
  std::uint32_t seeds_passed = 0;
  bool passed = false;
};

// DRAL on per-repetition synthetic separable data against the closed-form rhs
MistakeBoundReport verify_mistake_bounds(const RunConfig& cfg);
std::string render_report(const MistakeBoundReport& report);

struct RegretReport {
  double eta = 0.0;
  double rhs = 0.0;
  double corollary_rhs = 0.0;
  struct Row {
    std::uint32_t rep = 0;
    double regret = 0.0;
    double regret_per_trial = 0.0;
    bool pass = false;
  };
  std::vector<Row> rows;
  std::uint32_t seeds_total = 0;
  std::uint32_t seeds_passed = 0;
  bool passed = false;
};

// DSAL/DSOL local regret with the mandated constant step size
RegretReport verify_local_regret(const RunConfig& cfg);
std::string render_report(const RegretReport& report);

struct EquivalenceReport {
  struct Row {
    std::string learner;
    double max_f_diff = 0.0;
    bool queries_identical = false;
    bool pass = false;
  };
  std::vector<Row> rows;
  double tolerance = 1e-9;
  bool passed = false;
};

// linear-kernel DRAL/DSAL against their linear counterparts on a shared stream
EquivalenceReport verify_kernel_equivalence(const RunConfig& cfg);
std::string render_report(const EquivalenceReport& report);

struct GradcheckReport {
  std::uint32_t samples = 0;
  double max_rel_err = 0.0;
  double max_abs_err_small = 0.0;  // components with magnitude < 1e-3
  bool passed = false;
};

// analytic gradient against central finite differences of an independently
// coded loss; flip_sign corrupts the analytic sign (negative control)
GradcheckReport verify_gradcheck(std::uint32_t samples, std::uint64_t seed, bool flip_sign);
std::string render_report(const GradcheckReport& report);

struct SmoothnessReport {
  std::uint32_t pairs = 0;
  std::uint32_t violations = 0;
  double max_ratio = 0.0;  // ||grad diff|| / (beta ||theta diff|| + tol)
  bool passed = false;
};

SmoothnessReport verify_smoothness(std::uint32_t pairs_per_radius, std::uint64_t seed);
std::string render_report(const SmoothnessReport& report);

struct ObservationReport {
  struct Entry {
    double d = 0.0;
    double queried = 0.0;
    double queried_std = 0.0;
    double rejected = 0.0;
    double rejected_std = 0.0;
    double risk = 0.0;
    double risk_std = 0.0;
  };
  std::vector<Entry> entries;  // ascending d
  bool queried_trend = false;  // non-increasing in d within one pooled std
  bool rejected_trend = false;
  bool risk_trend = false;     // non-decreasing in d within one pooled std
  bool passed = false;
};

// final-T monotone trend checks across a d-sweep of otherwise identical runs
ObservationReport observation_checks(const std::vector<std::pair<double, RunAggregate>>& by_d);
std::string render_report(const ObservationReport& report);

}

#endif
