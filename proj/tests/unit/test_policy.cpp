// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "shiptraj/error.hpp"
#include "shiptraj/policy.hpp"
#include "shiptraj/reward.hpp"
#include "shiptraj/textio.hpp"

namespace st = shiptraj;
namespace pl = shiptraj::policy;

namespace {

st::ais::PredictionSample sample() { return st::testing::line_sample({122.5, 37.4}, 0.0003, -0.0001); }

pl::PolicyParams random_params(std::uint64_t seed, int vocab = 81) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 0.5);
  pl::PolicyParams p{pl::Matrix(pl::kFeatureDim, static_cast<std::size_t>(vocab))};
  for (double& v : p.weights.data) v = n(rng);
  return p;
}

TEST(ActionVocab, DecodeGrid) {
  const pl::ActionVocab v;
  EXPECT_EQ(v.size(), 81);
  EXPECT_EQ(v.center_index(), 40);
  EXPECT_EQ(v.decode(40), (st::geo::GeoPoint{0.0, 0.0}));
  EXPECT_EQ(v.decode(0), (st::geo::GeoPoint{-0.002, -0.002}));
  EXPECT_EQ(v.decode(80), (st::geo::GeoPoint{0.002, 0.002}));
  EXPECT_DOUBLE_EQ(v.decode(41).lat, 0.0005);
  EXPECT_DOUBLE_EQ(v.decode(49).lon, 0.0005);
  EXPECT_THROW(v.decode(81), st::Error);
  EXPECT_THROW(v.decode(-1), st::Error);
  EXPECT_THROW(pl::DeskPolicy(pl::ActionVocab{4, 0.002}), st::Error);
}

TEST(Featurize, VelocityScaling) {
  const pl::DeskPolicy desk;
  // Eastward motion of exactly max_step per step.
  const auto s = st::testing::line_sample({122.5, 37.4}, 0.002, 0.0);
  const auto f = desk.featurize(s, {});
  EXPECT_EQ(f[0], 1.0);
  EXPECT_NEAR(f[1], 1.0, 1e-9);
  EXPECT_NEAR(f[2], 0.0, 1e-9);
  EXPECT_NEAR(f[3], 1.0, 1e-9);
  EXPECT_EQ(f[5], 0.0);
  const auto still = desk.featurize(st::testing::line_sample({122.5, 37.4}, 0.0, 0.0), {});
  for (std::size_t i = 1; i < still.size(); ++i) EXPECT_EQ(still[i], 0.0);
}

TEST(Featurize, GeneratedStepAndClamp) {
  const pl::DeskPolicy desk;
  const auto s = sample();
  const st::geo::GeoPoint last = s.observed.back();
  const std::vector<st::geo::GeoPoint> partial{{last.lon - 0.001, last.lat + 0.05}};
  const auto f = desk.featurize(s, partial);
  EXPECT_NEAR(f[3], -0.5, 1e-9);
  EXPECT_EQ(f[4], 10.0);  // 25 clamped
}

TEST(Featurize, SymmetricConflictsCancel) {
  const pl::DeskPolicy desk;
  auto s = sample();
  for (const double d : {0.003, -0.003}) {
    st::ais::ConflictTrack c;
    for (const auto& p : s.observed) c.points.push_back({p.lon + d, p.lat});
    s.conflicts.push_back(c);
  }
  const auto f = desk.featurize(s, {});
  EXPECT_EQ(f[5], 2.0);
  EXPECT_NEAR(f[6], 0.0, 1e-9);
  EXPECT_NEAR(f[7], 0.0, 1e-9);
}

TEST(StepDistribution, ZeroWeightsUniformAndNormalized) {
  const pl::DeskPolicy desk;
  const auto p = desk.step_distribution(desk.initial_params(), desk.featurize(sample(), {}));
  for (double v : p) EXPECT_NEAR(v, 1.0 / 81.0, 1e-15);
  const auto q = desk.step_distribution(random_params(1), desk.featurize(sample(), {}));
  EXPECT_NEAR(std::accumulate(q.begin(), q.end(), 0.0), 1.0, 1e-12);
  EXPECT_THROW(desk.step_distribution(desk.initial_params(), std::vector<double>(3, 1.0)), st::Error);
}

TEST(StepDistribution, ShiftInvariantAndCenterForcing) {
  const pl::DeskPolicy desk;
  const std::vector<double> bias_only{1, 0, 0, 0, 0, 0, 0, 0};
  auto p = random_params(2);
  const auto a = desk.step_distribution(p, bias_only);
  for (std::size_t c = 0; c < 81; ++c) p.weights(0, c) += 3.0;
  const auto b = desk.step_distribution(p, bias_only);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  auto forced = desk.initial_params();
  forced.weights(0, 40) = 10.0;
  // e^10 / (e^10 + 80) computed directly.
  const double expect = std::exp(10.0) / (std::exp(10.0) + 80.0);
  EXPECT_NEAR(desk.step_distribution(forced, bias_only)[40], expect, 1e-12);
  EXPECT_GT(expect, 0.99);
}

TEST(SampleCompletion, DeterministicAndConsistent) {
  const pl::DeskPolicy desk;
  const auto s = sample();
  const auto params = random_params(3);
  const auto a = desk.sample_completion(params, s, 4, 99), b = desk.sample_completion(params, s, 4, 99);
  EXPECT_EQ(a.actions, b.actions);
  EXPECT_EQ(a.text, b.text);
  ASSERT_EQ(a.trajectory.size(), 4u);
  for (double lp : a.logprobs) EXPECT_LE(lp, 0.0);
  EXPECT_NEAR(desk.logprob_and_grad(params, s, a.actions).logprob, a.total_logprob(), 1e-12);
  // Positions are the prefix sum of decoded moves from the last observation.
  st::geo::GeoPoint pos = s.observed.back();
  for (std::size_t t = 0; t < 4; ++t) {
    const auto d = desk.vocab().decode(a.actions[t]);
    pos = {pos.lon + d.lon, pos.lat + d.lat};
    EXPECT_EQ(a.trajectory[t], pos);
  }
  EXPECT_EQ(st::reward::total_reward(a.text, s, {}).format, 1.0);
}

TEST(SampleCompletion, ForcedCenterRepeatsLastPoint) {
  const pl::DeskPolicy desk;
  auto forced = desk.initial_params();
  forced.weights(0, 40) = 100.0;
  const auto s = sample();
  const auto c = desk.sample_completion(forced, s, 5, 1);
  for (const auto& p : c.trajectory) EXPECT_EQ(p, s.observed.back());
  EXPECT_EQ(desk.greedy_completion(forced, s, 5).actions, std::vector<int>(5, 40));
}

TEST(SampleCompletion, EmpiricalFrequenciesFollowProbabilities) {
  const pl::DeskPolicy desk(pl::ActionVocab{3, 0.002});
  auto params = random_params(4, 9);
  const auto s = sample();
  const auto p = desk.step_distribution(params, desk.featurize(s, {}));
  std::vector<double> counts(9, 0.0);
  const int n = 20000;
  for (int i = 0; i < n; ++i) counts[static_cast<std::size_t>(desk.sample_completion(params, s, 1, i).actions[0])] += 1.0;
  for (std::size_t a = 0; a < 9; ++a) {
    EXPECT_NEAR(counts[a] / n, p[a], 4.0 * std::sqrt(p[a] * (1 - p[a]) / n) + 1e-4);
  }
}

TEST(LogProbGrad, ZeroWeightsClosedForm) {
  const pl::DeskPolicy desk(pl::ActionVocab{3, 0.002});
  const auto s = sample();
  const auto r = desk.logprob_and_grad(desk.initial_params(), s, std::vector<int>{5});
  EXPECT_NEAR(r.logprob, std::log(1.0 / 9.0), 1e-15);
  const auto f = desk.featurize(s, {});
  for (std::size_t i = 0; i < pl::kFeatureDim; ++i) {
    for (std::size_t a = 0; a < 9; ++a) {
      EXPECT_NEAR(r.gradient(i, a), f[i] * ((a == 5 ? 1.0 : 0.0) - 1.0 / 9.0), 1e-15);
    }
  }
  EXPECT_THROW(desk.logprob_and_grad(desk.initial_params(), s, std::vector<int>{9}), st::Error);
}

TEST(LogProbGrad, MatchesFiniteDifferences) {
  const pl::DeskPolicy desk;
  auto s = sample();
  st::ais::ConflictTrack c;
  for (const auto& p : s.observed) c.points.push_back({p.lon + 0.004, p.lat - 0.002});
  s.conflicts.push_back(c);
  const auto params = random_params(5);
  const std::vector<int> actions{3, 40, 77, 12};
  const auto g = desk.logprob_and_grad(params, s, actions);
  const auto fd = st::testing::central_difference(
      [&](const std::vector<double>& w) {
        auto p = params;
        p.weights.data = w;
        return desk.logprob_and_grad(p, s, actions).logprob;
      },
      params.weights.data, 1e-5);
  EXPECT_LT(st::testing::relative_error(g.gradient.data, fd), 1e-5);
}

TEST(Checkpoint, BitExactRoundTrip) {
  const pl::Checkpoint ck{pl::ActionVocab{7, 0.0015}, random_params(6, 49)};
  const auto back = pl::deserialize_checkpoint(pl::serialize_checkpoint(ck));
  EXPECT_EQ(back, ck);
  const auto path = std::filesystem::temp_directory_path() / "shiptraj_policy_test.ckpt";
  pl::save_checkpoint(path, ck);
  EXPECT_EQ(pl::load_checkpoint(path), ck);
  std::filesystem::remove(path);
}

TEST(Checkpoint, RejectsCorruptInput) {
  auto text = pl::serialize_checkpoint({pl::ActionVocab{}, random_params(7)});
  EXPECT_THROW(pl::deserialize_checkpoint("not a checkpoint"), st::Error);
  EXPECT_THROW(pl::deserialize_checkpoint(text.substr(0, text.size() / 2)), st::Error);
  EXPECT_THROW(pl::load_checkpoint("/nonexistent/policy.ckpt"), st::Error);
}

TEST(MixSeed, Spreads) {
  EXPECT_NE(pl::mix_seed(1, 0), pl::mix_seed(1, 1));
  EXPECT_NE(pl::mix_seed(1, 0), pl::mix_seed(2, 0));
  EXPECT_EQ(pl::mix_seed(5, 7), pl::mix_seed(5, 7));
}

}  // namespace
