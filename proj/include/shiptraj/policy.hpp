// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "shiptraj/ais_ingest.hpp"
#include "shiptraj/geo.hpp"

namespace shiptraj::policy {

using geo::GeoPoint;

/// Quantized per-step displacement vocabulary: bins_per_axis values per axis,
/// evenly spaced over [-max_step_deg, +max_step_deg]. Index = lon_bin * bins + lat_bin.
struct ActionVocab {
  int bins_per_axis = 9;
  double max_step_deg = 0.002;

  int size() const noexcept { return bins_per_axis * bins_per_axis; }
  int center_index() const noexcept;
  bool valid() const noexcept;
  /// (dlon, dlat) in degrees for an action index.
  GeoPoint decode(int action) const;
  friend bool operator==(const ActionVocab&, const ActionVocab&) = default;
};

/// Dense row-major matrix of reals.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator*=(double s) noexcept;
  /// this += s * o
  Matrix& axpy(double s, const Matrix& o);
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline constexpr std::size_t kFeatureDim = 8;
/// Features are clamped to [-kFeatureClamp, kFeatureClamp].
inline constexpr double kFeatureClamp = 10.0;

/// Policy parameters: weights of shape (feature_dim x vocab_size).
struct PolicyParams {
  Matrix weights;
  std::size_t feature_dim() const noexcept { return weights.rows; }
  friend bool operator==(const PolicyParams&, const PolicyParams&) = default;
};

struct Completion {
  std::vector<int> actions;
  std::vector<GeoPoint> trajectory;
  std::string text;
  std::vector<double> logprobs;

  double total_logprob() const noexcept;
};

struct LogProbGrad {
  double logprob = 0.0;
  Matrix gradient;
};

/// Anything GRPO can train: sample completions, and score forced action
/// sequences with a parameter gradient.
class PolicyBackend {
 public:
  virtual ~PolicyBackend() = default;
  virtual PolicyParams initial_params() const = 0;
  virtual Completion sample_completion(const PolicyParams& params,
                                       const ais::PredictionSample& sample, std::size_t t_pred,
                                       std::uint64_t rng_seed) const = 0;
  virtual LogProbGrad logprob_and_grad(const PolicyParams& params,
                                       const ais::PredictionSample& sample,
                                       std::span<const int> actions) const = 0;
};

inline constexpr std::string_view kPlaceholderThink =
    "Extrapolating the observed motion while keeping clear of nearby ships.";

/// Autoregressive softmax policy over quantized displacements with
/// hand-built kinematic features.
class DeskPolicy final : public PolicyBackend {
 public:
  explicit DeskPolicy(ActionVocab vocab = {}, bool cot = true);

  const ActionVocab& vocab() const noexcept { return vocab_; }
  bool cot() const noexcept { return cot_; }

  PolicyParams initial_params() const override;

  /// Feature vector for the next step given the points generated so far:
  /// [bias, observed dlon, observed dlat, current dlon, current dlat,
  ///  conflict count, mean conflict offset lon, mean conflict offset lat].
  /// Displacements and offsets are divided by max_step_deg.
  std::vector<double> featurize(const ais::PredictionSample& sample,
                                std::span<const GeoPoint> partial) const;

  /// softmax(features^T * weights). Throws kDimensionMismatch.
  std::vector<double> step_distribution(const PolicyParams& params,
                                        std::span<const double> features) const;

  Completion sample_completion(const PolicyParams& params, const ais::PredictionSample& sample,
                               std::size_t t_pred, std::uint64_t rng_seed) const override;

  /// Most probable action at each step.
  Completion greedy_completion(const PolicyParams& params, const ais::PredictionSample& sample,
                               std::size_t t_pred) const;

  /// Throws kIndexOutOfRange for actions outside the vocabulary.
  LogProbGrad logprob_and_grad(const PolicyParams& params, const ais::PredictionSample& sample,
                               std::span<const int> actions) const override;

 private:
  template <typename Pick>
  Completion rollout(const PolicyParams& params, const ais::PredictionSample& sample,
                     std::size_t t_pred, Pick&& pick) const;

  ActionVocab vocab_;
  bool cot_;
};

/// Checkpoint: vocabulary, feature scaling and weights as hex floats, so
/// load(save(p)) is bit-exact.
struct Checkpoint {
  ActionVocab vocab;
  PolicyParams params;
  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

std::string serialize_checkpoint(const Checkpoint& ckpt);
Checkpoint deserialize_checkpoint(const std::string& text);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0) noexcept;

}  // namespace shiptraj::policy
