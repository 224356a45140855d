#include "rejectron/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "rejectron/csv.hpp"
#include "rejectron/kernel.hpp"
#include "rejectron/linear.hpp"
#include "rejectron/version.hpp"

namespace rejectron {

namespace {

constexpr double kSmoothnessSlack = 1e-9;

double dense_dot(const std::vector<double>& w, const SparseVector& x) {
  double acc = 0.0;
  for (const auto& f : x.items()) {
    if (f.index <= w.size()) acc += w[f.index - 1] * f.value;
  }
  return acc;
}

std::string bool_text(bool v) { return v ? "true" : "false"; }

// per-t mean and variance accumulated one repetition at a time
struct WelfordCurve {
  std::vector<double> mean;
  std::vector<double> m2;
  std::uint64_t count = 0;

  void start(std::size_t size) {
    mean.assign(size, 0.0);
    m2.assign(size, 0.0);
    count = 0;
  }

  void add(std::size_t i, double x) {
    const double delta = x - mean[i];
    mean[i] += delta / static_cast<double>(count);
    m2[i] += delta * (x - mean[i]);
  }

  MetricCurve finish() const {
    MetricCurve out;
    out.mean = mean;
    out.std_dev.resize(m2.size());
    for (std::size_t i = 0; i < m2.size(); ++i)
      out.std_dev[i] = count > 0 ? std::sqrt(m2[i] / static_cast<double>(count)) : 0.0;
    return out;
  }
};

std::string metric_csv(const MetricCurve& curve, const std::string& index_header) {
  std::ostringstream os;
  os << index_header << ",mean,std\n";
  for (std::size_t i = 0; i < curve.mean.size(); ++i) {
    os << (i + 1) << ',' << format_double(curve.mean[i]) << ',' << format_double(curve.std_dev[i])
       << '\n';
  }
  return os.str();
}

double gaussian(SeededRng& rng) {
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> ball_point(std::size_t dim, double radius, SeededRng& rng) {
  std::vector<double> v(dim);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (auto& c : v) {
      c = gaussian(rng);
      norm_sq += c * c;
    }
  } while (norm_sq == 0.0);
  const double r = radius * std::pow(rng.next_unit(), 1.0 / static_cast<double>(dim));
  const double scale = r / std::sqrt(norm_sq);
  for (auto& c : v) c *= scale;
  return v;
}

double naive_ds_loss(double u, double rho, double d, double gamma) {
  return 2.0 * d / (1.0 + std::exp(gamma * (u - rho))) +
         2.0 * (1.0 - d) / (1.0 + std::exp(gamma * (u + rho)));
}

double pick_cost(SeededRng& rng) {
  static constexpr double kCosts[3] = {0.1, 0.25, 0.4};
  return kCosts[rng.next_below(3)];
}

}  // namespace

std::uint64_t dataset_seed(std::uint64_t base_seed) { return derive_seed(base_seed, 0); }

std::uint64_t repetition_seed(std::uint64_t base_seed, std::uint32_t rep) {
  return derive_seed(base_seed, 1 + static_cast<std::uint64_t>(rep));
}

PreparedDataset prepare_dataset(const RunConfig& cfg) {
  return prepare_dataset(cfg, dataset_seed(cfg.base_seed));
}

PreparedDataset prepare_dataset(const RunConfig& cfg, std::uint64_t seed) {
  PreparedDataset out;
  switch (cfg.dataset.source) {
    case DatasetSpec::Source::synthetic_separable: {
      auto synth = synthetic_separable(cfg.dataset.synth.n, cfg.dataset.synth.dim,
                                       cfg.dataset.synth.rho_star, cfg.dataset.synth.margin_slack,
                                       seed);
      out.data = std::move(synth.data);
      out.witness_w = std::move(synth.witness_w);
      out.witness_rho = synth.witness_rho;
      out.has_witness = true;
      out.source = "synthetic-separable";
      break;
    }
    case DatasetSpec::Source::synthetic_noisy: {
      out.data = synthetic_noisy(cfg.dataset.synth.n, cfg.dataset.synth.dim,
                                 cfg.dataset.synth.flip_prob, seed);
      out.source = "synthetic-noisy";
      break;
    }
    case DatasetSpec::Source::path: {
      const std::string resolved = resolve_dataset_path(cfg.dataset.path);
      out.sha256 = sha256_file(resolved);
      if (!cfg.dataset.expected_sha256.empty() && out.sha256 != cfg.dataset.expected_sha256) {
        throw std::runtime_error("dataset checksum mismatch for " + resolved + ": expected " +
                                 cfg.dataset.expected_sha256 + ", got " + out.sha256);
      }
      out.data = load_libsvm(resolved);
      out.source = cfg.dataset.path;
      break;
    }
  }

  if (cfg.bias) {
    out.data = augment_bias(out.data);
    if (out.has_witness) out.witness_w.push_back(0.0);
  }

  if (cfg.normalization == Normalization::unit_ball) {
    const double pre_radius = out.data.R;
    out.data = normalize(out.data, Normalization::unit_ball);
    if (out.has_witness)
      for (auto& c : out.witness_w) c *= pre_radius;
  } else if (cfg.normalization == Normalization::per_feature_scale) {
    std::vector<double> feature_max(out.data.dim, 0.0);
    for (const auto& ex : out.data.examples)
      for (const auto& f : ex.x.items())
        feature_max[f.index - 1] = std::max(feature_max[f.index - 1], std::fabs(f.value));
    out.data = normalize(out.data, Normalization::per_feature_scale);
    if (out.has_witness)
      for (std::size_t j = 0; j < out.witness_w.size() && j < feature_max.size(); ++j)
        if (feature_max[j] > 0.0) out.witness_w[j] *= feature_max[j];
  }
  return out;
}

RunResult run_once(const RunConfig& cfg, const PreparedDataset& ds, std::uint64_t rep_seed) {
  if (ds.data.examples.empty()) throw std::invalid_argument("cannot run on an empty dataset");
  cfg.validate();

  ExampleStream stream(ds.data, cfg.stream_mode, derive_seed(rep_seed, 0));
  SeededRng learner_rng(derive_seed(rep_seed, 1));
  const HyperParams hp = cfg.hyper_params();

  const bool kernel = is_kernel_learner(cfg.learner);
  LinearModel lin;
  KernelModel km;
  if (kernel) {
    km = init_kernel_model(ds.data.dim, cfg.kernel);
  } else {
    LearnerVariant variant = LearnerVariant::dral;
    if (cfg.learner == LearnerKind::dsal) variant = LearnerVariant::dsal;
    if (cfg.learner == LearnerKind::dsol) variant = LearnerVariant::dsol;
    lin = init_model(ds.data.dim, variant);
  }

  RunResult out;
  out.trials.reserve(cfg.T);
  for (std::uint64_t t = 1; t <= cfg.T; ++t) {
    const Example& ex = ds.data.examples[stream.next_index()];
    const double eta = cfg.schedule.eta_at(t - 1);
    const double rho_before = kernel ? km.rho.value() : lin.rho.value();
    const double f = kernel ? kernel_predict_value(km, ex.x) : predict_value(lin, ex.x);

    StepOutcome so;
    switch (cfg.learner) {
      case LearnerKind::dral:
        so = dral_step(lin, ex.x, ex.label, cfg.d, eta, learner_rng);
        break;
      case LearnerKind::dsal:
        so = dsal_step(lin, ex.x, ex.label, hp, eta, learner_rng);
        break;
      case LearnerKind::dsol:
        so = dsol_step(lin, ex.x, ex.label, hp, eta);
        break;
      case LearnerKind::kernel_dral:
        so = kernel_dral_step(km, ex.x, ex.label, cfg.d, eta);
        break;
      case LearnerKind::kernel_dsal:
        so = kernel_dsal_step(km, ex.x, ex.label, hp, eta, learner_rng);
        break;
    }

    TrialRecord rec;
    rec.t = t;
    rec.queried = so.queried;
    rec.updated = so.updated;
    rec.f_t = f;
    rec.loss_d = so.loss_d;
    rec.outcome = classify_outcome(ex.label * f, rho_before);
    rec.rejected = std::fabs(f) <= rho_before;
    rec.misclassified = !rec.rejected && ((f > rho_before && ex.label < 0) ||
                                          (f < -rho_before && ex.label > 0));
    rec.rho_t = rho_before;
    rec.eta_t = eta;
    rec.grad_norm_sq = so.grad_norm_sq;
    rec.rho_projected = so.rho_projected;
    if (so.rho_projected) ++out.rho_projections;
    out.trials.push_back(rec);
  }

  if (kernel) {
    out.final_rho = km.rho.value();
    out.support_size = km.supports.size();
  } else {
    out.final_w = lin.w;
    out.final_rho = lin.rho.value();
  }
  return out;
}

std::vector<RunResult> run_repetitions(const RunConfig& cfg, const PreparedDataset& ds) {
  const std::uint32_t reps = cfg.repetitions;
  std::vector<RunResult> results(reps);
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, reps));
  if (jobs == 1) {
    for (std::uint32_t i = 0; i < reps; ++i)
      results[i] = run_once(cfg, ds, repetition_seed(cfg.base_seed, i));
    return results;
  }

  std::atomic<std::uint32_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::uint32_t i = next.fetch_add(1);
      if (i >= reps) return;
      try {
        results[i] = run_once(cfg, ds, repetition_seed(cfg.base_seed, i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

RunAggregate aggregate(const std::vector<RunResult>& runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate needs at least one run");
  const std::size_t T = runs.front().trials.size();
  for (const auto& r : runs)
    if (r.trials.size() != T)
      throw std::invalid_argument("aggregate needs runs of equal length");

  WelfordCurve risk, queried, misclassified, rejected;
  risk.start(T);
  queried.start(T);
  misclassified.start(T);
  rejected.start(T);

  std::vector<std::vector<double>> label_curves;
  label_curves.reserve(runs.size());

  for (const auto& run : runs) {
    ++risk.count;
    ++queried.count;
    ++misclassified.count;
    ++rejected.count;
    double cum_loss = 0.0;
    std::uint64_t cum_queried = 0, cum_mis = 0, cum_rej = 0;
    std::vector<double> labels;
    for (std::size_t i = 0; i < T; ++i) {
      const TrialRecord& rec = run.trials[i];
      cum_loss += rec.loss_d;
      cum_queried += rec.queried ? 1 : 0;
      cum_mis += rec.misclassified ? 1 : 0;
      cum_rej += rec.rejected ? 1 : 0;
      const double denom = static_cast<double>(i + 1);
      risk.add(i, cum_loss / denom);
      queried.add(i, static_cast<double>(cum_queried) / denom);
      misclassified.add(i, static_cast<double>(cum_mis) / denom);
      rejected.add(i, static_cast<double>(cum_rej) / denom);
      if (rec.queried) labels.push_back(cum_loss / denom);
    }
    label_curves.push_back(std::move(labels));
  }

  RunAggregate out;
  out.risk = risk.finish();
  out.fraction_queried = queried.finish();
  out.fraction_misclassified = misclassified.finish();
  out.fraction_rejected = rejected.finish();

  std::size_t K = label_curves.front().size();
  for (const auto& c : label_curves) K = std::min(K, c.size());
  WelfordCurve rvl;
  rvl.start(K);
  for (const auto& c : label_curves) {
    ++rvl.count;
    for (std::size_t k = 0; k < K; ++k) rvl.add(k, c[k]);
  }
  out.risk_vs_labels = rvl.finish();
  return out;
}

void write_run_outputs(const RunConfig& cfg, const PreparedDataset& ds,
                       const std::vector<RunResult>& runs, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const RunAggregate agg = aggregate(runs);

  const auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };
  write_text_file(path("risk.csv"), metric_csv(agg.risk, "t"));
  write_text_file(path("fraction_queried.csv"), metric_csv(agg.fraction_queried, "t"));
  write_text_file(path("fraction_misclassified.csv"), metric_csv(agg.fraction_misclassified, "t"));
  write_text_file(path("fraction_rejected.csv"), metric_csv(agg.fraction_rejected, "t"));

  std::ostringstream rvl;
  rvl << "labels_asked,mean_risk,std_risk\n";
  for (std::size_t k = 0; k < agg.risk_vs_labels.mean.size(); ++k) {
    rvl << (k + 1) << ',' << format_double(agg.risk_vs_labels.mean[k]) << ','
        << format_double(agg.risk_vs_labels.std_dev[k]) << '\n';
  }
  write_text_file(path("risk_vs_labels.csv"), rvl.str());

  std::uint64_t projections = 0;
  for (const auto& r : runs) projections += r.rho_projections;

  std::ostringstream man;
  man << "version=" << kVersion << '\n';
  man << "seed.scheme=splitmix64-derived\n";
  man << "seed.dataset=" << dataset_seed(cfg.base_seed) << '\n';
  man << "dataset.source=" << ds.source << '\n';
  if (!ds.sha256.empty()) man << "dataset.sha256=" << ds.sha256 << '\n';
  man << "dataset.examples=" << ds.data.size() << '\n';
  man << "dataset.dim=" << ds.data.dim << '\n';
  man << "dataset.radius=" << format_double(ds.data.R) << '\n';
  if (ds.has_witness) {
    double norm_sq = 0.0;
    for (double c : ds.witness_w) norm_sq += c * c;
    man << "witness.norm=" << format_double(std::sqrt(norm_sq)) << '\n';
    man << "witness.rho=" << format_double(ds.witness_rho) << '\n';
  }
  man << "repetitions.completed=" << runs.size() << '\n';
  man << "rho_projections=" << projections << '\n';
  std::istringstream cfg_lines(render_config(cfg));
  std::string line;
  while (std::getline(cfg_lines, line)) man << "config." << line << '\n';
  write_text_file(path("run_manifest.txt"), man.str());
}

MistakeBoundReport verify_mistake_bounds(const RunConfig& cfg) {
  if (cfg.learner != LearnerKind::dral)
    throw std::invalid_argument("mistake bound verification requires the dral learner");
  if (cfg.schedule.decrement != 0.0)
    throw std::invalid_argument("mistake bound verification requires a constant step size");
  if (cfg.dataset.source != DatasetSpec::Source::synthetic_separable)
    throw std::invalid_argument("mistake bound verification requires separable synthetic data");

  MistakeBoundReport report;
  report.seeds_total = cfg.repetitions;
  for (std::uint32_t i = 0; i < cfg.repetitions; ++i) {
    const std::uint64_t rep_seed = repetition_seed(cfg.base_seed, i);
    MistakeBoundReport::Row row;
    row.rep = i;

    PreparedDataset ds = prepare_dataset(cfg, derive_seed(rep_seed, 2));
    double w_norm_sq = 0.0;
    for (double c : ds.witness_w) w_norm_sq += c * c;
    const double W = std::sqrt(w_norm_sq);
    const double R = ds.data.R;

    double witness_ramp = 0.0;
    for (const auto& ex : ds.data.examples) {
      const double fstar = ex.label * dense_dot(ds.witness_w, ex.x);
      witness_ramp =
          std::max(witness_ramp, double_ramp_loss(Margin(fstar), RejectionWidth(ds.witness_rho),
                                                  cfg.d));
    }

    if (!ds.has_witness) {
      row.note = "dataset carries no witness";
    } else if (witness_ramp > 0.0) {
      row.note = "witness ramp loss is nonzero";
    } else if (!(W * R > ds.witness_rho)) {
      row.note = "witness violates W R > rho_star";
    }

    if (row.note.empty()) {
      BoundInputs inputs;
      inputs.W = W;
      inputs.R = R;
      inputs.rho_star = ds.witness_rho;
      inputs.d = cfg.d;
      inputs.eta = cfg.schedule.eta0;
      inputs.gamma = cfg.gamma;
      const TheoremBounds bounds = theorem2_bounds(inputs);
      row.reject_rhs = bounds.reject_rhs;
      row.mistake_rhs = bounds.mistake_rhs;

      const RunResult run = run_once(cfg, ds, rep_seed);
      for (const auto& rec : run.trials) {
        if (!rec.queried) continue;
        if (rec.outcome == Outcome::R1 || rec.outcome == Outcome::R2) ++row.reject_count;
        if (rec.outcome == Outcome::M) ++row.mistake_count;
      }
      row.pass = static_cast<double>(row.reject_count) <= row.reject_rhs &&
                 static_cast<double>(row.mistake_count) <= row.mistake_rhs;
    }

    if (row.pass) ++report.seeds_passed;
    report.rows.push_back(std::move(row));
  }
  report.passed = report.seeds_passed == report.seeds_total && report.seeds_total > 0;
  return report;
}

std::string render_report(const MistakeBoundReport& report) {
  std::ostringstream os;
  os << "suite=mistake-bounds\n";
  os << "seeds.total=" << report.seeds_total << '\n';
  os << "seeds.passed=" << report.seeds_passed << '\n';
  for (const auto& row : report.rows) {
    const std::string p = "rep." + std::to_string(row.rep);
    os << p << ".reject_count=" << row.reject_count << '\n';
    os << p << ".reject_rhs=" << format_double(row.reject_rhs) << '\n';
    os << p << ".mistake_count=" << row.mistake_count << '\n';
    os << p << ".mistake_rhs=" << format_double(row.mistake_rhs) << '\n';
    os << p << ".pass=" << bool_text(row.pass) << '\n';
    if (!row.note.empty()) os << p << ".note=" << row.note << '\n';
  }
  os << "passed=" << bool_text(report.passed) << '\n';
  return os.str();
}

RegretReport verify_local_regret(const RunConfig& cfg) {
  if (cfg.learner != LearnerKind::dsal && cfg.learner != LearnerKind::dsol)
    throw std::invalid_argument("local regret verification requires dsal or dsol");

  const PreparedDataset ds = prepare_dataset(cfg);
  if (!(ds.data.R > 0.0)) throw std::invalid_argument("dataset has zero radius");

  RegretReport report;
  report.eta = theorem6_eta(cfg.gamma, ds.data.R);
  report.rhs = theorem6_rhs(cfg.gamma, ds.data.R, static_cast<double>(cfg.T));
  report.corollary_rhs = corollary7_rhs(cfg.gamma, ds.data.R, static_cast<double>(cfg.T));
  report.seeds_total = cfg.repetitions;

  RunConfig local = cfg;
  local.schedule.eta0 = report.eta;
  local.schedule.decrement = 0.0;
  local.schedule.floor = report.eta;

  for (std::uint32_t i = 0; i < cfg.repetitions; ++i) {
    const RunResult run = run_once(local, ds, repetition_seed(cfg.base_seed, i));
    std::vector<double> grads;
    grads.reserve(run.trials.size());
    for (const auto& rec : run.trials) grads.push_back(rec.grad_norm_sq);
    RegretReport::Row row;
    row.rep = i;
    row.regret = local_regret(grads);
    row.regret_per_trial = row.regret / static_cast<double>(cfg.T);
    row.pass = row.regret <= report.rhs;
    if (row.pass) ++report.seeds_passed;
    report.rows.push_back(row);
  }
  report.passed = report.seeds_passed == report.seeds_total && report.seeds_total > 0;
  return report;
}

std::string render_report(const RegretReport& report) {
  std::ostringstream os;
  os << "suite=local-regret\n";
  os << "eta=" << format_double(report.eta) << '\n';
  os << "rhs=" << format_double(report.rhs) << '\n';
  os << "corollary_rhs=" << format_double(report.corollary_rhs) << '\n';
  os << "seeds.total=" << report.seeds_total << '\n';
  os << "seeds.passed=" << report.seeds_passed << '\n';
  for (const auto& row : report.rows) {
    const std::string p = "rep." + std::to_string(row.rep);
    os << p << ".regret=" << format_double(row.regret) << '\n';
    os << p << ".regret_per_trial=" << format_double(row.regret_per_trial) << '\n';
    os << p << ".pass=" << bool_text(row.pass) << '\n';
  }
  os << "passed=" << bool_text(report.passed) << '\n';
  return os.str();
}

EquivalenceReport verify_kernel_equivalence(const RunConfig& cfg) {
  const PreparedDataset ds = prepare_dataset(cfg);
  const std::uint64_t rep_seed = repetition_seed(cfg.base_seed, 0);

  EquivalenceReport report;
  const std::pair<LearnerKind, LearnerKind> pairs[] = {
      {LearnerKind::dral, LearnerKind::kernel_dral},
      {LearnerKind::dsal, LearnerKind::kernel_dsal},
  };
  for (const auto& [linear_kind, kernel_kind] : pairs) {
    RunConfig lin_cfg = cfg;
    lin_cfg.learner = linear_kind;
    RunConfig ker_cfg = cfg;
    ker_cfg.learner = kernel_kind;
    ker_cfg.kernel = KernelSpec{};

    const RunResult lin = run_once(lin_cfg, ds, rep_seed);
    const RunResult ker = run_once(ker_cfg, ds, rep_seed);

    EquivalenceReport::Row row;
    row.learner = learner_name(linear_kind);
    row.queries_identical = true;
    for (std::size_t t = 0; t < lin.trials.size(); ++t) {
      row.max_f_diff = std::max(row.max_f_diff,
                                std::fabs(lin.trials[t].f_t - ker.trials[t].f_t));
      if (lin.trials[t].queried != ker.trials[t].queried) row.queries_identical = false;
    }
    row.pass = row.queries_identical && row.max_f_diff <= report.tolerance;
    report.rows.push_back(std::move(row));
  }
  report.passed = true;
  for (const auto& row : report.rows) report.passed = report.passed && row.pass;
  return report;
}

std::string render_report(const EquivalenceReport& report) {
  std::ostringstream os;
  os << "suite=kernel-equivalence\n";
  os << "tolerance=" << format_double(report.tolerance) << '\n';
  for (const auto& row : report.rows) {
    os << row.learner << ".max_f_diff=" << format_double(row.max_f_diff) << '\n';
    os << row.learner << ".queries_identical=" << bool_text(row.queries_identical) << '\n';
    os << row.learner << ".pass=" << bool_text(row.pass) << '\n';
  }
  os << "passed=" << bool_text(report.passed) << '\n';
  return os.str();
}

GradcheckReport verify_gradcheck(std::uint32_t samples, std::uint64_t seed, bool flip_sign) {
  SeededRng rng(seed);
  GradcheckReport report;
  report.samples = samples;
  constexpr double h = 1e-6;

  for (std::uint32_t i = 0; i < samples; ++i) {
    const double u = -5.0 + 10.0 * rng.next_unit();
    const double rho = 3.0 * rng.next_unit();
    const double gamma = 0.5 + 3.5 * rng.next_unit();
    const double d = pick_cost(rng);

    DsGradient g = ds_gradient(Margin(u), RejectionWidth(rho), HyperParams(d, gamma));
    if (flip_sign) {
      g.margin = -g.margin;
      g.rho = -g.rho;
    }

    const double fd_margin =
        (naive_ds_loss(u + h, rho, d, gamma) - naive_ds_loss(u - h, rho, d, gamma)) / (2.0 * h);
    const double fd_rho =
        (naive_ds_loss(u, rho + h, d, gamma) - naive_ds_loss(u, rho - h, d, gamma)) / (2.0 * h);

    const auto check = [&](double analytic, double fd) {
      const double magnitude = std::max(std::fabs(analytic), std::fabs(fd));
      const double err = std::fabs(analytic - fd);
      if (magnitude >= 1e-3)
        report.max_rel_err = std::max(report.max_rel_err, err / magnitude);
      else
        report.max_abs_err_small = std::max(report.max_abs_err_small, err);
    };
    check(g.margin, fd_margin);
    check(g.rho, fd_rho);
  }
  report.passed = report.max_rel_err <= 1e-4 && report.max_abs_err_small <= 1e-6;
  return report;
}

std::string render_report(const GradcheckReport& report) {
  std::ostringstream os;
  os << "suite=gradcheck\n";
  os << "samples=" << report.samples << '\n';
  os << "max_rel_err=" << format_double(report.max_rel_err) << '\n';
  os << "max_abs_err_small=" << format_double(report.max_abs_err_small) << '\n';
  os << "passed=" << bool_text(report.passed) << '\n';
  return os.str();
}

SmoothnessReport verify_smoothness(std::uint32_t pairs_per_radius, std::uint64_t seed) {
  SeededRng rng(seed);
  SmoothnessReport report;
  constexpr std::size_t dim = 6;

  for (const double radius : {1.0, 2.0}) {
    for (std::uint32_t i = 0; i < pairs_per_radius; ++i) {
      ++report.pairs;
      const double gamma = 0.5 + 3.5 * rng.next_unit();
      const double d = pick_cost(rng);
      const int y = rng.next_unit() < 0.5 ? 1 : -1;
      const std::vector<double> x = ball_point(dim, radius, rng);
      const HyperParams hp(d, gamma);
      const double beta = smoothness_constant(gamma, radius);

      const auto grad_at = [&](const std::vector<double>& w, double rho) {
        double u = 0.0;
        for (std::size_t j = 0; j < dim; ++j) u += w[j] * x[j];
        const DsGradient g = ds_gradient(Margin(y * u), RejectionWidth(rho), hp);
        std::vector<double> full(dim + 1);
        for (std::size_t j = 0; j < dim; ++j) full[j] = y * g.margin * x[j];
        full[dim] = g.rho;
        return full;
      };

      const std::vector<double> w1 = ball_point(dim, 4.0, rng);
      const std::vector<double> w2 = ball_point(dim, 4.0, rng);
      const double rho1 = 3.0 * rng.next_unit();
      const double rho2 = 3.0 * rng.next_unit();

      const std::vector<double> g1 = grad_at(w1, rho1);
      const std::vector<double> g2 = grad_at(w2, rho2);

      double diff_sq = 0.0;
      for (std::size_t j = 0; j <= dim; ++j) {
        const double delta = g1[j] - g2[j];
        diff_sq += delta * delta;
      }
      double dist_sq = (rho1 - rho2) * (rho1 - rho2);
      for (std::size_t j = 0; j < dim; ++j) {
        const double delta = w1[j] - w2[j];
        dist_sq += delta * delta;
      }

      const double lhs = std::sqrt(diff_sq);
      const double rhs = beta * std::sqrt(dist_sq) + kSmoothnessSlack;
      report.max_ratio = std::max(report.max_ratio, lhs / rhs);
      if (lhs > rhs) ++report.violations;
    }
  }
  report.passed = report.violations == 0;
  return report;
}

std::string render_report(const SmoothnessReport& report) {
  std::ostringstream os;
  os << "suite=smoothness\n";
  os << "pairs=" << report.pairs << '\n';
  os << "violations=" << report.violations << '\n';
  os << "max_ratio=" << format_double(report.max_ratio) << '\n';
  os << "passed=" << bool_text(report.passed) << '\n';
  return os.str();
}

ObservationReport observation_checks(const std::vector<std::pair<double, RunAggregate>>& by_d) {
  if (by_d.size() < 2)
    throw std::invalid_argument("trend checks need at least two rejection costs");

  ObservationReport report;
  for (const auto& [d, agg] : by_d) {
    if (agg.risk.mean.empty()) throw std::invalid_argument("aggregate carries no trials");
    ObservationReport::Entry e;
    e.d = d;
    e.queried = agg.fraction_queried.mean.back();
    e.queried_std = agg.fraction_queried.std_dev.back();
    e.rejected = agg.fraction_rejected.mean.back();
    e.rejected_std = agg.fraction_rejected.std_dev.back();
    e.risk = agg.risk.mean.back();
    e.risk_std = agg.risk.std_dev.back();
    report.entries.push_back(e);
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const auto& a, const auto& b) { return a.d < b.d; });

  report.queried_trend = true;
  report.rejected_trend = true;
  report.risk_trend = true;
  for (std::size_t i = 1; i < report.entries.size(); ++i) {
    const auto& lo = report.entries[i - 1];
    const auto& hi = report.entries[i];
    const auto tol = [](double a, double b) { return std::sqrt(a * a + b * b); };
    if (hi.queried > lo.queried + tol(lo.queried_std, hi.queried_std))
      report.queried_trend = false;
    if (hi.rejected > lo.rejected + tol(lo.rejected_std, hi.rejected_std))
      report.rejected_trend = false;
    if (hi.risk < lo.risk - tol(lo.risk_std, hi.risk_std)) report.risk_trend = false;
  }
  report.passed = report.queried_trend && report.rejected_trend && report.risk_trend;
  return report;
}

std::string render_report(const ObservationReport& report) {
  std::ostringstream os;
  os << "suite=observations\n";
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    const std::string p = "entry." + std::to_string(i);
    os << p << ".d=" << format_double(e.d) << '\n';
    os << p << ".fraction_queried=" << format_double(e.queried) << '\n';
    os << p << ".fraction_rejected=" << format_double(e.rejected) << '\n';
    os << p << ".risk=" << format_double(e.risk) << '\n';
  }
  os << "trend.queried_nonincreasing=" << bool_text(report.queried_trend) << '\n';
  os << "trend.rejected_nonincreasing=" << bool_text(report.rejected_trend) << '\n';
  os << "trend.risk_nondecreasing=" << bool_text(report.risk_trend) << '\n';
  os << "passed=" << bool_text(report.passed) << '\n';
  return os.str();
}

}
