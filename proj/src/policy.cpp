// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "shiptraj/error.hpp"
#include "shiptraj/textio.hpp"

namespace shiptraj::policy {
namespace {

constexpr std::string_view kCheckpointMagic = "shiptraj-policy";
constexpr int kCheckpointVersion = 1;

double clamp_feature(double v) { return std::clamp(v, -kFeatureClamp, kFeatureClamp); }

// log-softmax of features^T * weights.
std::vector<double> log_distribution(const PolicyParams& params, std::span<const double> features) {
  const Matrix& w = params.weights;
  if (features.size() != w.rows) {
    throw Error(Errc::kDimensionMismatch, "feature vector has " + std::to_string(features.size()) +
                                              " entries, weights expect " + std::to_string(w.rows));
  }
  std::vector<double> logits(w.cols, 0.0);
  for (std::size_t f = 0; f < w.rows; ++f) {
    const double x = features[f];
    if (x == 0.0) continue;
    const double* row = &w.data[f * w.cols];
    for (std::size_t a = 0; a < w.cols; ++a) logits[a] += x * row[a];
  }
  const double mx = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double l : logits) sum += std::exp(l - mx);
  const double lse = mx + std::log(sum);
  for (double& l : logits) l -= lse;
  return logits;
}

std::vector<double> normalized(const std::vector<double>& logp) {
  std::vector<double> p(logp.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] = std::exp(logp[i]);
  for (double& v : p) v /= sum;
  return p;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int ActionVocab::center_index() const noexcept {
  const int c = bins_per_axis / 2;
  return c * bins_per_axis + c;
}

bool ActionVocab::valid() const noexcept {
  return bins_per_axis >= 3 && bins_per_axis % 2 == 1 && max_step_deg > 0.0 &&
         std::isfinite(max_step_deg);
}

GeoPoint ActionVocab::decode(int action) const {
  if (action < 0 || action >= size()) {
    throw Error(Errc::kIndexOutOfRange, "action " + std::to_string(action) + " outside vocabulary");
  }
  const int c = bins_per_axis / 2;
  const double step = max_step_deg / c;
  return {(action / bins_per_axis - c) * step, (action % bins_per_axis - c) * step};
}

Matrix& Matrix::operator+=(const Matrix& o) { return axpy(1.0, o); }

Matrix& Matrix::operator*=(double s) noexcept {
  for (double& v : data) v *= s;
  return *this;
}

Matrix& Matrix::axpy(double s, const Matrix& o) {
  if (o.rows != rows || o.cols != cols) {
    throw Error(Errc::kDimensionMismatch, "matrix shapes differ");
  }
  for (std::size_t i = 0; i < data.size(); ++i) data[i] += s * o.data[i];
  return *this;
}

double Completion::total_logprob() const noexcept {
  double s = 0.0;
  for (double l : logprobs) s += l;
  return s;
}

DeskPolicy::DeskPolicy(ActionVocab vocab, bool cot) : vocab_(vocab), cot_(cot) {
  if (!vocab_.valid()) throw Error(Errc::kInvalidArgument, "vocabulary needs an odd bin count >= 3");
}

PolicyParams DeskPolicy::initial_params() const {
  return {Matrix(kFeatureDim, static_cast<std::size_t>(vocab_.size()), 0.0)};
}

std::vector<double> DeskPolicy::featurize(const ais::PredictionSample& sample,
                                          std::span<const GeoPoint> partial) const {
  const double scale = 1.0 / vocab_.max_step_deg;
  const auto& obs = sample.observed;
  const GeoPoint last = obs.back();
  const GeoPoint prev = obs.size() >= 2 ? obs[obs.size() - 2] : last;

  std::vector<double> f(kFeatureDim, 0.0);
  f[0] = 1.0;
  f[1] = clamp_feature((last.lon - prev.lon) * scale);
  f[2] = clamp_feature((last.lat - prev.lat) * scale);
  if (partial.empty()) {
    f[3] = f[1];
    f[4] = f[2];
  } else {
    const GeoPoint cur = partial.back();
    const GeoPoint before = partial.size() >= 2 ? partial[partial.size() - 2] : last;
    f[3] = clamp_feature((cur.lon - before.lon) * scale);
    f[4] = clamp_feature((cur.lat - before.lat) * scale);
  }
  if (!sample.conflicts.empty()) {
    double dlon = 0.0, dlat = 0.0;
    for (const auto& c : sample.conflicts) {
      dlon += c.points.back().lon - last.lon;
      dlat += c.points.back().lat - last.lat;
    }
    const auto n = static_cast<double>(sample.conflicts.size());
    f[5] = clamp_feature(n);
    f[6] = clamp_feature(dlon / n * scale);
    f[7] = clamp_feature(dlat / n * scale);
  }
  return f;
}

std::vector<double> DeskPolicy::step_distribution(const PolicyParams& params,
                                                  std::span<const double> features) const {
  return normalized(log_distribution(params, features));
}

template <typename Pick>
Completion DeskPolicy::rollout(const PolicyParams& params, const ais::PredictionSample& sample,
                               std::size_t t_pred, Pick&& pick) const {
  Completion out;
  out.actions.reserve(t_pred);
  out.trajectory.reserve(t_pred);
  out.logprobs.reserve(t_pred);
  GeoPoint pos = sample.observed.back();
  for (std::size_t t = 0; t < t_pred; ++t) {
    const auto features = featurize(sample, out.trajectory);
    const auto logp = log_distribution(params, features);
    const int a = pick(logp);
    out.actions.push_back(a);
    out.logprobs.push_back(logp[static_cast<std::size_t>(a)]);
    const GeoPoint d = vocab_.decode(a);
    pos = {pos.lon + d.lon, pos.lat + d.lat};
    out.trajectory.push_back(pos);
  }
  out.text = textio::render_answer(out.trajectory, kPlaceholderThink, cot_);
  return out;
}

Completion DeskPolicy::sample_completion(const PolicyParams& params,
                                         const ais::PredictionSample& sample, std::size_t t_pred,
                                         std::uint64_t rng_seed) const {
  std::mt19937_64 rng(rng_seed);
  return rollout(params, sample, t_pred, [&](const std::vector<double>& logp) {
    const double u = uniform01(rng);
    double acc = 0.0;
    int chosen = -1;
    for (std::size_t a = 0; a < logp.size(); ++a) {
      const double p = std::exp(logp[a]);
      if (p > 0.0) chosen = static_cast<int>(a);
      acc += p;
      if (u < acc && p > 0.0) return static_cast<int>(a);
    }
    return chosen;  // rounding left u above the cumulative sum
  });
}

Completion DeskPolicy::greedy_completion(const PolicyParams& params,
                                         const ais::PredictionSample& sample,
                                         std::size_t t_pred) const {
  return rollout(params, sample, t_pred, [](const std::vector<double>& logp) {
    return static_cast<int>(std::max_element(logp.begin(), logp.end()) - logp.begin());
  });
}

LogProbGrad DeskPolicy::logprob_and_grad(const PolicyParams& params,
                                         const ais::PredictionSample& sample,
                                         std::span<const int> actions) const {
  LogProbGrad out;
  out.gradient = Matrix(params.weights.rows, params.weights.cols, 0.0);
  std::vector<GeoPoint> partial;
  partial.reserve(actions.size());
  GeoPoint pos = sample.observed.back();
  for (const int a : actions) {
    const GeoPoint d = vocab_.decode(a);  // validates the index
    const auto features = featurize(sample, partial);
    const auto logp = log_distribution(params, features);
    if (static_cast<std::size_t>(a) >= logp.size()) {
      throw Error(Errc::kIndexOutOfRange, "action outside weight columns");
    }
    out.logprob += logp[static_cast<std::size_t>(a)];
    const auto p = normalized(logp);
    for (std::size_t f = 0; f < features.size(); ++f) {
      const double x = features[f];
      if (x == 0.0) continue;
      double* row = &out.gradient.data[f * out.gradient.cols];
      for (std::size_t j = 0; j < p.size(); ++j) row[j] -= x * p[j];
      row[a] += x;
    }
    pos = {pos.lon + d.lon, pos.lat + d.lat};
    partial.push_back(pos);
  }
  return out;
}

std::string serialize_checkpoint(const Checkpoint& ckpt) {
  const Matrix& w = ckpt.params.weights;
  std::string out;
  char buf[64];
  auto hex = [&](double v) {
    std::snprintf(buf, sizeof buf, "%a", v);
    return std::string(buf);
  };
  out += std::string(kCheckpointMagic) + " " + std::to_string(kCheckpointVersion) + "\n";
  out += "bins_per_axis " + std::to_string(ckpt.vocab.bins_per_axis) + "\n";
  out += "max_step_deg " + hex(ckpt.vocab.max_step_deg) + "\n";
  out += "feature_scale " + hex(1.0 / ckpt.vocab.max_step_deg) + "\n";
  out += "feature_clamp " + hex(kFeatureClamp) + "\n";
  out += "shape " + std::to_string(w.rows) + " " + std::to_string(w.cols) + "\n";
  for (std::size_t r = 0; r < w.rows; ++r) {
    for (std::size_t c = 0; c < w.cols; ++c) {
      if (c) out += ' ';
      out += hex(w(r, c));
    }
    out += '\n';
  }
  return out;
}

Checkpoint deserialize_checkpoint(const std::string& text) {
  std::istringstream in(text);
  auto bad = [](const std::string& why) { return Error(Errc::kSchemaError, "checkpoint: " + why); };
  auto read_double = [&]() {
    std::string tok;
    if (!(in >> tok)) throw bad("truncated");
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) throw bad("bad number '" + tok + "'");
    return v;
  };
  auto expect_key = [&](const char* key) {
    std::string tok;
    if (!(in >> tok) || tok != key) throw bad(std::string("expected ") + key);
  };

  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kCheckpointMagic) throw bad("bad header");
  if (version != kCheckpointVersion) throw bad("unsupported version " + std::to_string(version));

  Checkpoint ckpt;
  expect_key("bins_per_axis");
  if (!(in >> ckpt.vocab.bins_per_axis)) throw bad("bins_per_axis");
  expect_key("max_step_deg");
  ckpt.vocab.max_step_deg = read_double();
  expect_key("feature_scale");
  (void)read_double();
  expect_key("feature_clamp");
  (void)read_double();
  expect_key("shape");
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw bad("shape");
  if (!ckpt.vocab.valid() || cols != static_cast<std::size_t>(ckpt.vocab.size())) {
    throw bad("vocabulary does not match weight shape");
  }
  ckpt.params.weights = Matrix(rows, cols);
  for (double& v : ckpt.params.weights.data) v = read_double();
  return ckpt;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
  out << serialize_checkpoint(ckpt);
  if (!out) throw Error(Errc::kIoError, "write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_checkpoint(buf.str());
}

}  // namespace shiptraj::policy
