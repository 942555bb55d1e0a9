// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "shiptraj/error.hpp"

namespace shiptraj::grpo {

void GrpoConfig::validate() const {
  auto fail = [](const std::string& why) { throw Error(Errc::kInvalidArgument, why); };
  if (group_size < 2) fail("group_size must be >= 2");
  if (!(clip_eps > 0.0 && clip_eps < 1.0)) fail("clip_eps must lie in (0, 1)");
  if (!(kl_coef >= 0.0)) fail("kl_coef must be >= 0");
  if (!(learning_rate >= 0.0)) fail("learning_rate must be >= 0");
  if (!(weight_decay >= 0.0)) fail("weight_decay must be >= 0");
  if (!(std_floor > 0.0)) fail("std_floor must be > 0");
  if (batch_size == 0) fail("batch_size must be >= 1");
  if (inner_epochs == 0) fail("inner_epochs must be >= 1");
  if (t_pred == 0) fail("t_pred must be >= 1");
}

std::vector<double> group_advantages(std::span<const double> rewards, double std_floor) {
  if (rewards.size() < 2) throw Error(Errc::kInvalidArgument, "group needs at least two rewards");
  const auto n = static_cast<double>(rewards.size());
  const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / n;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  const double denom = std::max(std::sqrt(var / n), std_floor);
  std::vector<double> adv;
  adv.reserve(rewards.size());
  for (double r : rewards) adv.push_back((r - mean) / denom);
  return adv;
}

double kl_estimate(double logp_current, double logp_reference) noexcept {
  const double log_ratio = logp_reference - logp_current;
  // expm1 keeps precision when the log-ratio is tiny: r - log r - 1 = expm1(d) - d.
  return std::max(0.0, std::expm1(log_ratio) - log_ratio);
}

double clipped_surrogate(double ratio, double advantage, double clip_eps) noexcept {
  const double clipped = std::clamp(ratio, 1.0 - clip_eps, 1.0 + clip_eps);
  return std::min(ratio * advantage, clipped * advantage);
}

ObjectiveResult grpo_objective(const RolloutGroup& group, const ais::PredictionSample& sample,
                               const policy::PolicyBackend& backend, const PolicyParams& current,
                               const PolicyParams& old, const PolicyParams& reference,
                               const GrpoConfig& cfg) {
  const std::size_t m = group.completions.size();
  if (m == 0 || group.advantages.size() != m) {
    throw Error(Errc::kInvalidArgument, "group advantages not populated");
  }
  ObjectiveResult out;
  out.gradient = Matrix(current.weights.rows, current.weights.cols, 0.0);
  const double inv_m = 1.0 / static_cast<double>(m);
  std::size_t clipped = 0;

  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = group.completions[i];
    const double adv = group.advantages[i];
    const double logp_old = backend.logprob_and_grad(old, sample, c.actions).logprob;
    const double recorded = c.total_logprob();
    if (std::fabs(logp_old - recorded) > 1e-9 * (1.0 + std::fabs(recorded))) {
      throw Error(Errc::kStaleGroup, "completion " + std::to_string(i) + " of " + group.sample_id +
                                         " was not sampled under the old policy");
    }
    auto cur = backend.logprob_and_grad(current, sample, c.actions);
    const double logp_ref = backend.logprob_and_grad(reference, sample, c.actions).logprob;

    const double ratio = std::exp(cur.logprob - logp_old);
    const double lower = 1.0 - cfg.clip_eps, upper = 1.0 + cfg.clip_eps;
    const double unclipped_term = ratio * adv;
    const double clipped_term = std::clamp(ratio, lower, upper) * adv;
    // The min picks the constant clipped branch only when it is strictly smaller.
    const bool clip_selected = clipped_term < unclipped_term;
    if (clip_selected) ++clipped;
    const double surrogate = clip_selected ? clipped_term : unclipped_term;

    const double r = std::exp(logp_ref - cur.logprob);
    const double kl = kl_estimate(cur.logprob, logp_ref);
    out.value += inv_m * (surrogate - cfg.kl_coef * kl);
    out.mean_kl += inv_m * kl;

    // d/dlogp_cur of the surrogate is ratio * adv on the unclipped branch;
    // d/dlogp_cur of the KL estimate is (1 - r).
    const double coeff = (clip_selected ? 0.0 : unclipped_term) - cfg.kl_coef * (1.0 - r);
    out.gradient.axpy(inv_m * coeff, cur.gradient);
  }
  out.clip_fraction = static_cast<double>(clipped) * inv_m;
  return out;
}

TrainResult train(const std::vector<ais::PredictionSample>& train_samples,
                  const policy::PolicyBackend& backend, const reward::RewardConfig& reward_cfg,
                  const GrpoConfig& cfg, const TrainCallbacks& callbacks) {
  return train_from(backend.initial_params(), train_samples, backend, reward_cfg, cfg, callbacks);
}

TrainResult train_from(PolicyParams initial, const std::vector<ais::PredictionSample>& train_samples,
                       const policy::PolicyBackend& backend, const reward::RewardConfig& reward_cfg,
                       const GrpoConfig& cfg, const TrainCallbacks& callbacks) {
  cfg.validate();
  if (train_samples.empty()) throw Error(Errc::kEmptyDataset, "training split is empty");

  TrainResult result;
  TrainState& st = result.state;
  st.current = std::move(initial);
  st.old = st.current;
  st.reference = st.current;

  std::mt19937_64 order_rng(policy::mix_seed(cfg.seed, 0xA5));
  std::vector<std::size_t> order(train_samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t cursor = order.size();
  auto next_index = [&]() {
    if (cursor == order.size()) {
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[static_cast<std::size_t>(order_rng() % i)]);
      }
      cursor = 0;
    }
    return order[cursor++];
  };

  const bool periodic = cfg.checkpoint_every > 0 && callbacks.on_checkpoint;
  if (periodic) callbacks.on_checkpoint(0, st.current);

  const std::size_t batch = std::min(cfg.batch_size, train_samples.size());
  for (std::size_t step = 1; step <= cfg.total_steps; ++step) {
    st.old = st.current;

    std::vector<std::size_t> picked;
    picked.reserve(batch);
    for (std::size_t b = 0; b < batch; ++b) picked.push_back(next_index());

    std::vector<RolloutGroup> groups(batch);
    double reward_sum = 0.0;
    const std::uint64_t step_seed = policy::mix_seed(cfg.seed, step);
    for (std::size_t b = 0; b < batch; ++b) {
      const auto& sample = train_samples[picked[b]];
      RolloutGroup& g = groups[b];
      g.sample_id = sample.id;
      for (std::size_t m = 0; m < cfg.group_size; ++m) {
        auto c = backend.sample_completion(st.old, sample, cfg.t_pred,
                                           policy::mix_seed(step_seed, b * cfg.group_size + m));
        const double r = reward::total_reward(c.text, sample, reward_cfg).total;
        g.rewards.push_back(r);
        reward_sum += r;
        g.completions.push_back(std::move(c));
      }
      g.advantages = group_advantages(g.rewards, cfg.std_floor);
    }

    StepLog log;
    log.step = step;
    log.mean_reward = reward_sum / static_cast<double>(batch * cfg.group_size);
    const double inv_b = 1.0 / static_cast<double>(batch);
    for (std::size_t epoch = 0; epoch < cfg.inner_epochs; ++epoch) {
      Matrix grad(st.current.weights.rows, st.current.weights.cols, 0.0);
      double value = 0.0, kl = 0.0, clip = 0.0;
      for (std::size_t b = 0; b < batch; ++b) {
        const auto obj = grpo_objective(groups[b], train_samples[picked[b]], backend, st.current,
                                        st.old, st.reference, cfg);
        grad.axpy(inv_b, obj.gradient);
        value += inv_b * obj.value;
        kl += inv_b * obj.mean_kl;
        clip += inv_b * obj.clip_fraction;
      }
      if (epoch == 0) {
        log.objective = value;
        log.mean_kl = kl;
        log.clip_fraction = clip;
      }
      // Decoupled weight decay, then gradient ascent.
      st.current.weights *= 1.0 - cfg.learning_rate * cfg.weight_decay;
      st.current.weights.axpy(cfg.learning_rate, grad);
    }

    st.step = step;
    st.reward_history.push_back(log.mean_reward);
    result.log.push_back(log);
    if (callbacks.on_step) callbacks.on_step(log);
    if (periodic && (step % cfg.checkpoint_every == 0 || step == cfg.total_steps)) {
      callbacks.on_checkpoint(step, st.current);
    }
  }
  return result;
}

}  // namespace shiptraj::grpo
