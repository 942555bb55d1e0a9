// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "shiptraj/ais_ingest.hpp"
#include "shiptraj/policy.hpp"
#include "shiptraj/reward.hpp"

namespace shiptraj::grpo {

using policy::Completion;
using policy::Matrix;
using policy::PolicyParams;

/// Learning rate used for the desk policy. LLM backends use kLlmLearningRate.
inline constexpr double kDeskLearningRate = 0.05;
inline constexpr double kLlmLearningRate = 1e-6;

struct GrpoConfig {
  std::size_t group_size = 8;  // M
  double clip_eps = 0.2;
  double kl_coef = 1e-4;  // beta
  double learning_rate = kDeskLearningRate;
  double weight_decay = 1e-2;
  std::size_t batch_size = 16;
  std::size_t inner_epochs = 1;  // mu
  double std_floor = 1e-8;
  std::size_t total_steps = 200;
  std::uint64_t seed = 0;
  std::size_t t_pred = 4;
  std::size_t checkpoint_every = 0;  // 0 disables periodic checkpoints

  /// Throws kInvalidArgument on violated invariants.
  void validate() const;
};

struct RolloutGroup {
  std::string sample_id;
  std::vector<Completion> completions;
  std::vector<double> rewards;
  std::vector<double> advantages;
};

/// (R_m - mean R) / max(population std R, std_floor).
std::vector<double> group_advantages(std::span<const double> rewards, double std_floor);

/// r - log r - 1 with r = exp(logp_reference - logp_current); always >= 0.
double kl_estimate(double logp_current, double logp_reference) noexcept;

/// Clipped surrogate min(rho * A, clip(rho, 1 - eps, 1 + eps) * A).
double clipped_surrogate(double ratio, double advantage, double clip_eps) noexcept;

struct ObjectiveResult {
  double value = 0.0;
  Matrix gradient;
  double mean_kl = 0.0;
  double clip_fraction = 0.0;
};

/// Group objective: mean clipped surrogate minus kl_coef times mean KL
/// estimate, with its gradient with respect to `current`. Throws
/// kStaleGroup when the recorded completion log-probs do not match `old`.
ObjectiveResult grpo_objective(const RolloutGroup& group, const ais::PredictionSample& sample,
                               const policy::PolicyBackend& backend, const PolicyParams& current,
                               const PolicyParams& old, const PolicyParams& reference,
                               const GrpoConfig& cfg);

struct StepLog {
  std::size_t step = 0;
  double mean_reward = 0.0;
  double mean_kl = 0.0;
  double clip_fraction = 0.0;
  double objective = 0.0;
};

struct TrainState {
  PolicyParams current;
  PolicyParams old;
  PolicyParams reference;
  std::size_t step = 0;
  std::vector<double> reward_history;
};

struct TrainCallbacks {
  std::function<void(const StepLog&)> on_step;
  /// Called with the state after `step` updates (step 0 = initial params).
  std::function<void(std::size_t step, const PolicyParams&)> on_checkpoint;
};

struct TrainResult {
  TrainState state;
  std::vector<StepLog> log;
};

/// GRPO training loop. Each step snapshots old <- current, draws group_size
/// completions per batch sample under old, scores them, and runs
/// inner_epochs ascent steps with decoupled weight decay. Deterministic
/// for a given seed. Throws kEmptyDataset.
TrainResult train(const std::vector<ais::PredictionSample>& train_samples,
                  const policy::PolicyBackend& backend, const reward::RewardConfig& reward_cfg,
                  const GrpoConfig& cfg, const TrainCallbacks& callbacks = {});

/// Same as train but starting from the given parameters, which also become
/// the frozen reference.
TrainResult train_from(PolicyParams initial, const std::vector<ais::PredictionSample>& train_samples,
                       const policy::PolicyBackend& backend, const reward::RewardConfig& reward_cfg,
                       const GrpoConfig& cfg, const TrainCallbacks& callbacks = {});

}  // namespace shiptraj::grpo
