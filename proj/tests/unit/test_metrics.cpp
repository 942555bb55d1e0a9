// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "shiptraj/error.hpp"
#include "shiptraj/metrics.hpp"
#include "shiptraj/textio.hpp"

namespace st = shiptraj;
namespace mt = shiptraj::metrics;
using st::geo::GeoPoint;
using Trajs = mt::TrajectoryList;

namespace {

TEST(Fde, Examples) {
  const Trajs truth{{{1.0, 1.0}, {2.0, 2.0}}};
  EXPECT_EQ(mt::fde(truth, truth), 0.0);
  const Trajs pred{{{1.0, 1.0}, {2.003, 2.004}}};
  EXPECT_NEAR(mt::fde(pred, truth), 0.005, 1e-12);
  const Trajs t2{{{0.0, 0.0}}, {{0.0, 0.0}}};
  const Trajs p2{{{0.003, 0.004}}, {{0.009, 0.012}}};
  EXPECT_NEAR(mt::fde(p2, t2), 0.010, 1e-12);
}

TEST(Ade, Examples) {
  const Trajs truth{{{0.0, 0.0}, {0.0, 0.0}}};
  const Trajs pred{{{0.003, 0.004}, {0.009, 0.012}}};
  EXPECT_NEAR(mt::ade(pred, truth), 0.010, 1e-12);
  const Trajs one_t{{{0.0, 0.0}}, {{1.0, 1.0}}};
  const Trajs one_p{{{0.1, 0.2}}, {{1.3, 0.9}}};
  EXPECT_DOUBLE_EQ(mt::ade(one_p, one_t), mt::fde(one_p, one_t));
}

TEST(Metrics, Invariances) {
  const Trajs truth{{{1, 1}, {2, 2}, {3, 3}}, {{5, 5}, {6, 6}, {7, 7}}};
  const Trajs pred{{{1.1, 1}, {2, 2.3}, {3.2, 3.1}}, {{5, 5.05}, {6.4, 6}, {7, 7.01}}};
  const Trajs rt{truth[1], truth[0]}, rp{pred[1], pred[0]};
  EXPECT_DOUBLE_EQ(mt::ade(pred, truth), mt::ade(rp, rt));
  EXPECT_DOUBLE_EQ(mt::fde(pred, truth), mt::fde(rp, rt));
  // Shifting by a power of two keeps the arithmetic exact.
  auto shift = [](Trajs t) {
    for (auto& tr : t) for (auto& p : tr) p = {p.lon + 16.0, p.lat - 8.0};
    return t;
  };
  EXPECT_NEAR(mt::ade(shift(pred), shift(truth)), mt::ade(pred, truth), 1e-12);
  // ADE never exceeds the worst per-step mean error; FDE is the last one.
  double worst = 0.0, last = 0.0;
  for (std::size_t t = 0; t < 3; ++t) {
    const Trajs pt{{pred[0][t]}, {pred[1][t]}}, tt{{truth[0][t]}, {truth[1][t]}};
    worst = std::max(worst, mt::fde(pt, tt));
    last = mt::fde(pt, tt);
  }
  EXPECT_LE(mt::ade(pred, truth), worst);
  EXPECT_DOUBLE_EQ(mt::fde(pred, truth), last);
}

TEST(Metrics, LengthMismatch) {
  const Trajs a{{{0, 0}, {1, 1}}}, b{{{0, 0}}}, c{};
  for (auto fn : {mt::fde, mt::ade, mt::fde_m, mt::ade_m}) {
    try {
      fn(a, b);
      ADD_FAILURE();
    } catch (const st::Error& e) {
      EXPECT_EQ(e.code(), st::Errc::kLengthMismatch);
    }
    EXPECT_THROW(fn(a, c), st::Error);
  }
}

TEST(Metrics, MeterSpaceLatitudeOffsetAtEquator) {
  const Trajs truth{{{0.0, 0.0}}}, pred{{{0.0, 0.001}}};
  EXPECT_NEAR(mt::fde_m(pred, truth), 110.574275822, 1e-6);
  EXPECT_NEAR(mt::fde_m(pred, truth), st::testing::meridian_arc_m(0.0, 0.001), 1e-6);
  EXPECT_NEAR(mt::ade_m(pred, truth), mt::fde_m(pred, truth), 1e-12);
}

std::vector<st::ais::PredictionSample> samples(int n) {
  std::vector<st::ais::PredictionSample> out;
  for (int i = 0; i < n; ++i) {
    auto s = st::testing::line_sample({122.0 + 0.01 * i, 37.4}, 0.0003, 0.0001);
    s.id = "4130000" + std::to_string(10 + i) + "-0-0";
    out.push_back(s);
  }
  return out;
}

TEST(EvaluateCompletions, ExactAndExcluded) {
  const auto data = samples(10);
  std::vector<mt::ModelOutput> outs;
  for (const auto& s : data) outs.push_back({s.id, st::textio::render_answer(s.future, "", true)});
  auto r = mt::evaluate_completions(outs, data, true);
  EXPECT_EQ(r.report.n_trajectories, 10u);
  EXPECT_EQ(r.report.n_points, 4u);
  EXPECT_LT(r.report.ade_deg, 1e-6);
  EXPECT_LT(r.report.fde_m, 0.1);
  EXPECT_EQ(r.errors.size(), 40u);

  outs[3].text = "garbage";
  r = mt::evaluate_completions(outs, data, true);
  EXPECT_EQ(r.report.n_trajectories, 9u);
  EXPECT_EQ(r.report.n_unparsable, 1u);
  EXPECT_EQ(r.errors.size(), 36u);
}

TEST(EvaluateCompletions, SubstituteLastObserved) {
  const auto data = samples(2);
  std::vector<mt::ModelOutput> outs{{data[0].id, st::textio::render_answer(data[0].future, "", true)},
                                    {data[1].id, "garbage"}};
  const auto r = mt::evaluate_completions(outs, data, true, mt::UnparsableStrategy::kSubstituteLastObserved);
  EXPECT_EQ(r.report.n_trajectories, 2u);
  EXPECT_EQ(r.report.n_unparsable, 1u);
  const Trajs pred{std::vector<GeoPoint>(4, data[1].observed.back())}, truth{data[1].future};
  EXPECT_NEAR(r.report.fde_deg, mt::fde(pred, truth) / 2.0, 1e-6);
}

TEST(EvaluateCompletions, UnknownSampleId) {
  try {
    mt::evaluate_completions({{"nope-0-0", "x"}}, samples(1), true);
    FAIL();
  } catch (const st::Error& e) {
    EXPECT_EQ(e.code(), st::Errc::kUnknownSampleId);
  }
}

TEST(WriteErrorsCsv, Columns) {
  std::ostringstream out;
  mt::write_errors_csv(out, {{"a-0-0", 1, 0.5, 55.0}});
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "sample_id,step,err_deg,err_m");
  EXPECT_NE(out.str().find("a-0-0,1,"), std::string::npos);
}

}  // namespace
