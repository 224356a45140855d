#include "rejectron/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include "rejectron/csv.hpp"

namespace rejectron {

bool is_kernel_learner(LearnerKind kind) {
  return kind == LearnerKind::kernel_dral || kind == LearnerKind::kernel_dsal;
}

std::string learner_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::dral: return "dral";
    case LearnerKind::dsal: return "dsal";
    case LearnerKind::dsol: return "dsol";
    case LearnerKind::kernel_dral: return "kernel-dral";
    case LearnerKind::kernel_dsal: return "kernel-dsal";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double to_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size() || !std::isfinite(v))
    throw ConfigError("config key '" + key + "' needs a finite number, got '" + value + "'");
  return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw ConfigError("config key '" + key + "' needs a nonnegative integer, got '" + value + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config key '" + key + "' needs true or false, got '" + value + "'");
}

LearnerKind to_learner(const std::string& value) {
  if (value == "dral") return LearnerKind::dral;
  if (value == "dsal") return LearnerKind::dsal;
  if (value == "dsol") return LearnerKind::dsol;
  if (value == "kernel-dral") return LearnerKind::kernel_dral;
  if (value == "kernel-dsal") return LearnerKind::kernel_dsal;
  throw ConfigError("unknown learner '" + value + "'");
}

KernelKind to_kernel_kind(const std::string& value) {
  if (value == "linear") return KernelKind::linear;
  if (value == "polynomial") return KernelKind::polynomial;
  if (value == "rbf") return KernelKind::rbf;
  throw ConfigError("unknown kernel kind '" + value + "'");
}

Normalization to_normalization(const std::string& value) {
  if (value == "none") return Normalization::none;
  if (value == "unit-ball") return Normalization::unit_ball;
  if (value == "per-feature-scale") return Normalization::per_feature_scale;
  throw ConfigError("unknown normalization '" + value + "'");
}

StreamMode to_stream_mode(const std::string& value) {
  if (value == "with-replacement") return StreamMode::with_replacement;
  if (value == "shuffle-epochs") return StreamMode::shuffle_epochs;
  throw ConfigError("unknown stream mode '" + value + "'");
}

std::string normalization_name(Normalization mode) {
  switch (mode) {
    case Normalization::none: return "none";
    case Normalization::unit_ball: return "unit-ball";
    case Normalization::per_feature_scale: return "per-feature-scale";
  }
  return "?";
}

std::string stream_mode_name(StreamMode mode) {
  return mode == StreamMode::with_replacement ? "with-replacement" : "shuffle-epochs";
}

std::string kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::linear: return "linear";
    case KernelKind::polynomial: return "polynomial";
    case KernelKind::rbf: return "rbf";
  }
  return "?";
}

std::string dataset_value(const DatasetSpec& spec) {
  switch (spec.source) {
    case DatasetSpec::Source::synthetic_separable: return "synthetic-separable";
    case DatasetSpec::Source::synthetic_noisy: return "synthetic-noisy";
    case DatasetSpec::Source::path: return spec.path;
  }
  return "?";
}

}

void RunConfig::validate() const {
  if (!std::isfinite(d) || d <= 0.0 || d >= 0.5)
    throw ConfigError("d must lie in (0, 0.5)");
  if (!std::isfinite(gamma) || gamma <= 0.0) throw ConfigError("gamma must be positive");
  try {
    schedule.validate();
    if (is_kernel_learner(learner)) kernel.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (T == 0) throw ConfigError("T must be at least 1");
  if (repetitions == 0) throw ConfigError("repetitions must be at least 1");
  if (jobs == 0) throw ConfigError("jobs must be at least 1");
  if (dataset.source == DatasetSpec::Source::path && dataset.path.empty())
    throw ConfigError("dataset path is empty");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, std::string> seen;
  bool kernel_keys_present = false;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key=value on line " + std::to_string(line_no));
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty config key on line " + std::to_string(line_no));
    if (!seen.emplace(key, value).second)
      throw ConfigError("duplicate config key '" + key + "'");

    if (key == "learner") cfg.learner = to_learner(value);
    else if (key == "d") cfg.d = to_double(key, value);
    else if (key == "gamma") cfg.gamma = to_double(key, value);
    else if (key == "eta0") cfg.schedule.eta0 = to_double(key, value);
    else if (key == "eta_decrement") cfg.schedule.decrement = to_double(key, value);
    else if (key == "eta_floor") cfg.schedule.floor = to_double(key, value);
    else if (key == "T") cfg.T = to_u64(key, value);
    else if (key == "repetitions") cfg.repetitions = static_cast<std::uint32_t>(to_u64(key, value));
    else if (key == "seed") cfg.base_seed = to_u64(key, value);
    else if (key == "dataset") {
      if (value == "synthetic-separable") cfg.dataset.source = DatasetSpec::Source::synthetic_separable;
      else if (value == "synthetic-noisy") cfg.dataset.source = DatasetSpec::Source::synthetic_noisy;
      else {
        cfg.dataset.source = DatasetSpec::Source::path;
        cfg.dataset.path = value;
      }
    }
    else if (key == "dataset.sha256") cfg.dataset.expected_sha256 = value;
    else if (key == "synthetic.n") cfg.dataset.synth.n = to_u64(key, value);
    else if (key == "synthetic.dim") cfg.dataset.synth.dim = to_u64(key, value);
    else if (key == "synthetic.rho_star") cfg.dataset.synth.rho_star = to_double(key, value);
    else if (key == "synthetic.margin_slack") cfg.dataset.synth.margin_slack = to_double(key, value);
    else if (key == "synthetic.flip_prob") cfg.dataset.synth.flip_prob = to_double(key, value);
    else if (key == "kernel.kind") { cfg.kernel.kind = to_kernel_kind(value); kernel_keys_present = true; }
    else if (key == "kernel.degree") { cfg.kernel.degree = static_cast<int>(to_u64(key, value)); kernel_keys_present = true; }
    else if (key == "kernel.coef0") { cfg.kernel.coef0 = to_double(key, value); kernel_keys_present = true; }
    else if (key == "kernel.width") { cfg.kernel.width = to_double(key, value); kernel_keys_present = true; }
    else if (key == "normalization") cfg.normalization = to_normalization(value);
    else if (key == "stream_mode") cfg.stream_mode = to_stream_mode(value);
    else if (key == "bias") cfg.bias = to_bool(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
  }

  if (kernel_keys_present && !is_kernel_learner(cfg.learner))
    throw ConfigError("kernel.* keys are only valid with a kernel learner");
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  return parse_config_text(text);
}

std::string render_config(const RunConfig& cfg) {
  std::string out;
  const auto kv = [&out](const std::string& k, const std::string& v) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  };
  kv("learner", learner_name(cfg.learner));
  kv("d", format_double(cfg.d));
  kv("gamma", format_double(cfg.gamma));
  kv("eta0", format_double(cfg.schedule.eta0));
  kv("eta_decrement", format_double(cfg.schedule.decrement));
  kv("eta_floor", format_double(cfg.schedule.floor));
  kv("T", std::to_string(cfg.T));
  kv("repetitions", std::to_string(cfg.repetitions));
  kv("seed", std::to_string(cfg.base_seed));
  kv("dataset", dataset_value(cfg.dataset));
  if (!cfg.dataset.expected_sha256.empty()) kv("dataset.sha256", cfg.dataset.expected_sha256);
  if (cfg.dataset.source != DatasetSpec::Source::path) {
    kv("synthetic.n", std::to_string(cfg.dataset.synth.n));
    kv("synthetic.dim", std::to_string(cfg.dataset.synth.dim));
    if (cfg.dataset.source == DatasetSpec::Source::synthetic_separable) {
      kv("synthetic.rho_star", format_double(cfg.dataset.synth.rho_star));
      kv("synthetic.margin_slack", format_double(cfg.dataset.synth.margin_slack));
    } else {
      kv("synthetic.flip_prob", format_double(cfg.dataset.synth.flip_prob));
    }
  }
  if (is_kernel_learner(cfg.learner)) {
    kv("kernel.kind", kernel_kind_name(cfg.kernel.kind));
    if (cfg.kernel.kind == KernelKind::polynomial) {
      kv("kernel.degree", std::to_string(cfg.kernel.degree));
      kv("kernel.coef0", format_double(cfg.kernel.coef0));
    }
    if (cfg.kernel.kind == KernelKind::rbf) kv("kernel.width", format_double(cfg.kernel.width));
  }
  kv("normalization", normalization_name(cfg.normalization));
  kv("stream_mode", stream_mode_name(cfg.stream_mode));
  kv("bias", cfg.bias ? "true" : "false");
  return out;
}

std::string resolve_dataset_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char* dir = std::getenv("REJECTRON_DATA_DIR")) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  throw std::runtime_error("dataset file not found: " + path);
}

}
