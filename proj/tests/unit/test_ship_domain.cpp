// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include <cmath>
#include <gtest/gtest.h>

#include "shiptraj/error.hpp"
#include "shiptraj/geo.hpp"
#include "shiptraj/ship_domain.hpp"
#include "shiptraj/trajectory.hpp"

namespace st = shiptraj;
using st::domain::qsd_contains;
using st::domain::qsd_radii;

namespace {

// Kijima's regressions evaluated by hand at L = 100 m, V = 10 kn:
// k_AD = 10^(0.3591 + 0.0952), k_DT = 10^(0.5441 - 0.0795).
TEST(QsdRadii, KijimaExample) {
  const double k_ad = 2.846426670374224, k_dt = 2.914741201472476;
  const auto p = qsd_radii(100.0, 10.0);
  EXPECT_NEAR(p.r_fore, 528.5083221934025, 1e-9);
  EXPECT_NEAR(p.r_aft, 100.0 * (1.0 + 0.67 * std::hypot(k_ad, k_dt / 2.0)), 1e-9);
  EXPECT_NEAR(p.r_starb, 100.0 * (0.2 + k_dt), 1e-9);
  EXPECT_NEAR(p.r_port, 100.0 * (0.2 + 0.75 * k_dt), 1e-9);
  EXPECT_EQ(p.k, 2);
  EXPECT_TRUE(p.valid());
}

TEST(QsdRadii, SlowShipsUseOneKnot) {
  const auto still = qsd_radii(100.0, 0.0), one = qsd_radii(100.0, 1.0);
  EXPECT_DOUBLE_EQ(still.r_fore, one.r_fore);
  EXPECT_DOUBLE_EQ(still.r_port, one.r_port);
  // At V = 1 both log terms vanish: k_AD = 10^0.0952, k_DT = 10^-0.0795.
  EXPECT_NEAR(one.r_starb, 100.0 * (0.2 + std::pow(10.0, -0.0795)), 1e-9);
}

TEST(QsdRadii, GrowWithSpeedAndLength) {
  EXPECT_GT(qsd_radii(100.0, 15.0).r_fore, qsd_radii(100.0, 10.0).r_fore);
  EXPECT_GT(qsd_radii(200.0, 10.0).r_starb, qsd_radii(100.0, 10.0).r_starb);
}

TEST(QsdRadii, RejectsInvalidShips) {
  for (const auto& [len, v, k] : {std::tuple{0.0, 10.0, 2}, std::tuple{-5.0, 10.0, 2},
                                  std::tuple{100.0, -1.0, 2}, std::tuple{std::nan(""), 10.0, 2}}) {
    try {
      qsd_radii(len, v, k);
      FAIL() << "expected InvalidShip for " << len << "," << v << "," << k;
    } catch (const st::Error& e) {
      EXPECT_EQ(e.code(), st::Errc::kInvalidShip);
    }
  }
  EXPECT_THROW(qsd_radii(100.0, 10.0, 3), st::Error);
}

TEST(QsdContains, AxisPointsAndCenter) {
  st::domain::QsdParams p{400.0, 200.0, 150.0, 100.0, 2};
  EXPECT_DOUBLE_EQ(qsd_contains(p, {0.0, 0.0}).f, 0.0);
  EXPECT_DOUBLE_EQ(qsd_contains(p, {400.0, 0.0}).f, 1.0);
  EXPECT_DOUBLE_EQ(qsd_contains(p, {-200.0, 0.0}).f, 1.0);
  EXPECT_DOUBLE_EQ(qsd_contains(p, {0.0, 150.0}).f, 1.0);
  EXPECT_DOUBLE_EQ(qsd_contains(p, {0.0, -100.0}).f, 1.0);
  EXPECT_TRUE(qsd_contains(p, {200.0, 75.0}).inside);  // (1/2)^2 + (1/2)^2
  EXPECT_DOUBLE_EQ(qsd_contains(p, {200.0, 75.0}).f, 0.5);
  EXPECT_FALSE(qsd_contains(p, {300.0, 120.0}).inside);
  // k = 1 is a diamond: the same point sums the ratios.
  p.k = 1;
  EXPECT_DOUBLE_EQ(qsd_contains(p, {200.0, 75.0}).f, 1.0);
  EXPECT_TRUE(qsd_contains(p, {200.0, 75.0}).inside);
}

TEST(QsdContains, ScalingDividesRatios) {
  const st::domain::QsdParams p{400.0, 200.0, 150.0, 100.0, 1};
  const st::geo::LocalXY q{100.0, -50.0};
  EXPECT_NEAR(qsd_contains(p.scaled(2.0), q).f, qsd_contains(p, q).f / 2.0, 1e-15);
}

st::Trajectory straight(std::int64_t mmsi, st::geo::GeoPoint start, double dlon, double dlat, std::size_t n,
                        double t0 = 1'600'000'000.0) {
  st::Trajectory t;
  t.mmsi = mmsi;
  t.t0 = t0;
  t.interval_s = 5.0;
  for (std::size_t i = 0; i < n; ++i) t.points.push_back({start.lon + dlon * i, start.lat + dlat * i});
  return t;
}

TEST(DetectConflicts, FlagsShipAheadOnly) {
  const auto target = straight(1, {122.5, 37.4}, 0.0, 0.0002, 8);  // northbound
  const auto ahead = straight(2, {122.5, 37.4015}, 0.0, 0.0002, 8);  // ~166 m ahead
  const auto far = straight(3, {122.6, 37.4}, 0.0, 0.0002, 8);
  const auto ship = st::domain::target_ship_for(target, {});
  const auto reports = st::domain::detect_conflicts(target, ship, {{2, &ahead}, {3, &far}}, 2, 1.0);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].neighbor_mmsi, 2);
  EXPECT_EQ(reports[0].intruded_steps.size(), 8u);
  EXPECT_LT(reports[0].min_f, 1.0);
}

TEST(DetectConflicts, SortsByMinF) {
  const auto target = straight(1, {122.5, 37.4}, 0.0, 0.0002, 8);
  const auto near = straight(2, {122.5, 37.4005}, 0.0, 0.0002, 8);
  const auto mid = straight(3, {122.5, 37.4025}, 0.0, 0.0002, 8);
  const auto reports = st::domain::detect_conflicts(target, st::domain::target_ship_for(target, {}),
                                                    {{3, &mid}, {2, &near}}, 2, 1.0);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].neighbor_mmsi, 2);
  EXPECT_LE(reports[0].min_f, reports[1].min_f);
}

TEST(DetectConflicts, ScaleEnlargesDomain) {
  const auto target = straight(1, {122.5, 37.4}, 0.0, 0.0002, 8);
  const auto other = straight(2, {122.5, 37.408}, 0.0, 0.0002, 8);  // ~890 m ahead
  const auto ship = st::domain::target_ship_for(target, {});
  EXPECT_TRUE(st::domain::detect_conflicts(target, ship, {{2, &other}}, 2, 1.0).empty());
  EXPECT_EQ(st::domain::detect_conflicts(target, ship, {{2, &other}}, 2, 3.0).size(), 1u);
}

TEST(DetectConflicts, RejectsMisalignedWindows) {
  const auto target = straight(1, {122.5, 37.4}, 0.0, 0.0002, 8);
  const auto shifted = straight(2, {122.5, 37.401}, 0.0, 0.0002, 8, 1'600'000'005.0);
  try {
    st::domain::detect_conflicts(target, st::domain::target_ship_for(target, {}), {{2, &shifted}}, 2, 1.0);
    FAIL() << "expected MisalignedWindows";
  } catch (const st::Error& e) {
    EXPECT_EQ(e.code(), st::Errc::kMisalignedWindows);
  }
}

TEST(StepKinematics, DerivedFromPositions) {
  const auto t = straight(1, {122.5, 37.4}, 0.0, 0.0002, 5);
  const auto h = st::domain::step_headings(t);
  for (double v : h) EXPECT_NEAR(v, 0.0, 1e-9);
  const auto s = st::domain::step_speeds(t, 10.0);
  // 0.0002 deg of latitude in 5 s, in knots.
  const double expect = st::geo::vincenty_distance(t.points[0], t.points[1]) / 5.0 * 3600.0 / 1852.0;
  EXPECT_NEAR(s[0], expect, 1e-9);
}

}  // namespace
