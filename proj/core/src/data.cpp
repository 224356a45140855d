#include "rejectron/data.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rejectron/csv.hpp"

namespace rejectron {

ParseError::ParseError(const std::string& msg, std::size_t line_number)
    : std::runtime_error(msg + " (line " + std::to_string(line_number) + ")"),
      line(line_number) {}

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

double parse_double(std::string_view token, std::size_t line_no, const char* what) {
  // from_chars rejects the explicit plus sign that libsvm labels carry
  std::string_view body = token;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
  if (body.empty() || res.ec != std::errc{} || res.ptr != body.data() + body.size() ||
      !std::isfinite(v))
    throw ParseError(std::string("malformed ") + what + " '" + std::string(token) + "'", line_no);
  return v;
}

std::uint32_t parse_index(std::string_view token, std::size_t line_no) {
  std::uint32_t v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || v == 0)
    throw ParseError("malformed feature index '" + std::string(token) + "'", line_no);
  return v;
}

}

Dataset finalize_dataset(std::vector<Example> examples) {
  if (examples.empty()) throw std::invalid_argument("dataset is empty");
  Dataset ds;
  ds.examples = std::move(examples);
  for (const auto& ex : ds.examples) {
    ds.dim = std::max<std::size_t>(ds.dim, ex.x.max_index());
    ds.R = std::max(ds.R, ex.x.norm());
  }
  if (ds.dim == 0) throw std::invalid_argument("dataset has no features");
  if (!(ds.R > 0.0)) throw std::invalid_argument("dataset is identically zero");
  return ds;
}

Dataset load_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);

  std::vector<Example> examples;
  std::vector<double> raw_labels;
  bool saw_zero = false;
  bool saw_minus_one = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;

    std::istringstream ss(line);
    std::string token;
    if (!(ss >> token)) continue;

    const double raw = parse_double(token, line_no, "label");
    if (raw != 0.0 && raw != 1.0 && raw != -1.0)
      throw ParseError("label must be 0, 1, or -1; got '" + token + "'", line_no);
    if (raw == 0.0) saw_zero = true;
    if (raw == -1.0) saw_minus_one = true;
    if (saw_zero && saw_minus_one)
      throw ParseError("label set mixes {0,1} and {-1,+1} conventions", line_no);

    std::vector<Feature> feats;
    while (ss >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 >= token.size())
        throw ParseError("malformed feature '" + token + "'", line_no);
      const std::uint32_t idx = parse_index(std::string_view(token).substr(0, colon), line_no);
      const double val =
          parse_double(std::string_view(token).substr(colon + 1), line_no, "feature value");
      if (!feats.empty() && idx <= feats.back().index)
        throw ParseError("feature indices must be strictly increasing", line_no);
      feats.push_back(Feature{idx, val});
    }
    examples.push_back(Example{SparseVector(std::move(feats)), raw == 0.0 ? -1 : (raw < 0 ? -1 : 1)});
  }
  if (examples.empty()) throw std::runtime_error("dataset file has no examples: " + path);
  return finalize_dataset(std::move(examples));
}

void save_libsvm(const Dataset& ds, const std::string& path) {
  std::string out;
  for (const auto& ex : ds.examples) {
    out += ex.label > 0 ? "+1" : "-1";
    for (const auto& f : ex.x.items()) {
      out += ' ';
      out += std::to_string(f.index);
      out += ':';
      out += format_double(f.value);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

Dataset normalize(const Dataset& ds, Normalization mode) {
  if (mode == Normalization::none) return ds;
  if (!(ds.R > 0.0)) throw std::invalid_argument("cannot normalize an all-zero dataset");

  std::vector<Example> out;
  out.reserve(ds.size());
  if (mode == Normalization::unit_ball) {
    const double scale = 1.0 / ds.R;
    for (const auto& ex : ds.examples) {
      std::vector<Feature> feats = ex.x.items();
      for (auto& f : feats) f.value *= scale;
      out.push_back(Example{SparseVector(std::move(feats)), ex.label});
    }
  } else {
    std::vector<double> feature_max(ds.dim, 0.0);
    for (const auto& ex : ds.examples)
      for (const auto& f : ex.x.items())
        feature_max[f.index - 1] = std::max(feature_max[f.index - 1], std::fabs(f.value));
    for (const auto& ex : ds.examples) {
      std::vector<Feature> feats = ex.x.items();
      for (auto& f : feats)
        if (feature_max[f.index - 1] > 0.0) f.value /= feature_max[f.index - 1];
      out.push_back(Example{SparseVector(std::move(feats)), ex.label});
    }
  }
  return finalize_dataset(std::move(out));
}

Dataset augment_bias(const Dataset& ds) {
  const auto bias_index = static_cast<std::uint32_t>(ds.dim + 1);
  std::vector<Example> out;
  out.reserve(ds.size());
  for (const auto& ex : ds.examples) {
    std::vector<Feature> feats = ex.x.items();
    feats.push_back(Feature{bias_index, 1.0});
    out.push_back(Example{SparseVector(std::move(feats)), ex.label});
  }
  return finalize_dataset(std::move(out));
}

namespace {

double gaussian(SeededRng& rng) {
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> unit_direction(std::size_t dim, SeededRng& rng) {
  std::vector<double> v(dim);
  for (;;) {
    double norm_sq = 0.0;
    for (auto& c : v) {
      c = gaussian(rng);
      norm_sq += c * c;
    }
    if (norm_sq > 0.0) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& c : v) c *= inv;
      return v;
    }
  }
}

// uniform draw from the unit ball: scaled gaussian direction
std::vector<double> ball_point(std::size_t dim, SeededRng& rng) {
  std::vector<double> v = unit_direction(dim, rng);
  const double r = std::pow(rng.next_unit(), 1.0 / static_cast<double>(dim));
  for (auto& c : v) c *= r;
  return v;
}

SparseVector dense_to_sparse(const std::vector<double>& v) {
  std::vector<Feature> feats;
  feats.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    feats.push_back(Feature{static_cast<std::uint32_t>(i + 1), v[i]});
  return SparseVector(std::move(feats));
}

constexpr double kMarginGap = 0.25;      // minimum |u . x| kept when sampling
constexpr double kMaxWitnessNorm = 16.0;  // largest witness scale we allow

}

SyntheticSeparable synthetic_separable(std::size_t n, std::size_t dim, double rho_star,
                                       double margin_slack, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("need at least one example");
  if (dim == 0) throw std::invalid_argument("dimension must be at least 1");
  if (!std::isfinite(rho_star) || rho_star < 0.0)
    throw std::invalid_argument("rho_star must be nonnegative and finite");
  if (!std::isfinite(margin_slack) || margin_slack <= 0.0)
    throw std::invalid_argument("margin_slack must be positive");

  const double required = (rho_star + 1.0 + margin_slack) / kMarginGap;
  if (required > kMaxWitnessNorm)
    throw std::invalid_argument(
        "infeasible geometry: rho_star + 1 + margin_slack exceeds the achievable margin "
        "at the witness norm bound");

  SeededRng rng(seed);
  const std::vector<double> u = unit_direction(dim, rng);

  std::vector<Example> examples;
  examples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (;;) {
      const std::vector<double> x = ball_point(dim, rng);
      double t = 0.0;
      for (std::size_t j = 0; j < dim; ++j) t += u[j] * x[j];
      if (std::fabs(t) < kMarginGap) continue;
      examples.push_back(Example{dense_to_sparse(x), t > 0.0 ? 1 : -1});
      break;
    }
  }

  SyntheticSeparable out;
  out.data = finalize_dataset(std::move(examples));
  out.witness_w.resize(dim);
  for (std::size_t j = 0; j < dim; ++j) out.witness_w[j] = required * u[j];
  out.witness_rho = rho_star;
  return out;
}

Dataset synthetic_noisy(std::size_t n, std::size_t dim, double flip_prob, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("need at least one example");
  if (dim == 0) throw std::invalid_argument("dimension must be at least 1");
  if (!std::isfinite(flip_prob) || flip_prob < 0.0 || flip_prob >= 0.5)
    throw std::invalid_argument("flip_prob must lie in [0, 0.5)");

  // relative margin kept clear of the separating plane so that, as in the
  // mid-size UCI binary tasks, most points are easy and the label flips are
  // the only noise source
  constexpr double kMarginCone = 0.25;
  constexpr std::uint32_t kMaxAttempts = 10000;

  SeededRng rng(seed);
  const std::vector<double> v = unit_direction(dim, rng);

  std::vector<Example> examples;
  examples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Feature> feats;
    double margin = 0.0;
    for (std::uint32_t attempt = 0;; ++attempt) {
      if (attempt == kMaxAttempts)
        throw std::runtime_error("margin sampling stalled; widen dim or lower the cone");
      feats.clear();
      margin = 0.0;
      double norm_sq = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double roll = rng.next_unit();
        double val = 0.0;
        if (roll < 0.3) val = -1.0;
        else if (roll < 0.6) val = 1.0;
        if (val != 0.0) {
          feats.push_back(Feature{static_cast<std::uint32_t>(j + 1), val});
          margin += v[j] * val;
          norm_sq += 1.0;
        }
      }
      if (norm_sq > 0.0 && std::fabs(margin) >= kMarginCone * std::sqrt(norm_sq)) break;
    }
    int y = margin > 0.0 ? 1 : -1;
    if (rng.bernoulli(flip_prob)) y = -y;
    examples.push_back(Example{SparseVector(std::move(feats)), y});
  }
  return finalize_dataset(std::move(examples));
}

ExampleStream::ExampleStream(const Dataset& ds, StreamMode mode, std::uint64_t seed)
    : n_(ds.size()), mode_(mode), rng_(seed) {
  if (n_ == 0) throw std::invalid_argument("cannot stream an empty dataset");
  if (mode_ == StreamMode::shuffle_epochs) {
    perm_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
    pos_ = n_;  // forces a shuffle on the first draw
  }
}

std::size_t ExampleStream::next_index() {
  if (mode_ == StreamMode::with_replacement) return rng_.next_below(n_);
  if (pos_ == n_) {
    for (std::size_t i = n_ - 1; i > 0; --i) {
      const std::size_t j = rng_.next_below(i + 1);
      std::swap(perm_[i], perm_[j]);
    }
    pos_ = 0;
  }
  return perm_[pos_++];
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for hashing: " + path);

  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("hash context allocation failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);

  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }

  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

}
