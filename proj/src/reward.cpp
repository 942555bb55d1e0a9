// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/reward.hpp"

#include <algorithm>

#include "shiptraj/error.hpp"

namespace shiptraj::reward {
namespace {

void require_same_length(std::span<const GeoPoint> pred, std::span<const GeoPoint> truth) {
  if (pred.size() != truth.size() || pred.empty()) {
    throw Error(Errc::kLengthMismatch, "prediction has " + std::to_string(pred.size()) +
                                           " points, ground truth " + std::to_string(truth.size()));
  }
}

}  // namespace

GeoPoint trajectory_center(std::span<const GeoPoint> points) {
  double lon = 0.0, lat = 0.0;
  for (const auto& p : points) {
    lon += p.lon;
    lat += p.lat;
  }
  const auto n = static_cast<double>(points.size());
  return {lon / n, lat / n};
}

FormatResult format_reward(std::string_view text, std::size_t t_pred, const RewardConfig& cfg) {
  FormatResult result;
  auto outcome = textio::parse_output(text, t_pred, cfg.cot_required);
  if (!outcome) {
    result.cause = outcome.failure().cause;
    return result;
  }
  const auto& traj = outcome.value().trajectory;
  const bool inside = std::all_of(traj.begin(), traj.end(),
                                  [&](const GeoPoint& p) { return geo::contains(cfg.bounds, p); });
  if (!inside) {
    result.out_of_bounds = true;
    return result;
  }
  result.reward = 1.0;
  result.parsed = std::move(outcome.value());
  return result;
}

double center_reward(std::span<const GeoPoint> pred, std::span<const GeoPoint> truth,
                     const RewardConfig& cfg) {
  require_same_length(pred, truth);
  const double d = geo::vincenty_distance(trajectory_center(pred), trajectory_center(truth));
  return d < cfg.center_threshold_m ? 1.0 : 0.0;
}

double pointwise_reward(std::span<const GeoPoint> pred, std::span<const GeoPoint> truth,
                        const RewardConfig& cfg) {
  require_same_length(pred, truth);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    if (geo::vincenty_distance(pred[t], truth[t]) < cfg.point_threshold_m) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

RewardBreakdown total_reward(std::string_view text, const ais::PredictionSample& sample,
                             const RewardConfig& cfg) {
  RewardConfig effective = cfg;
  if (cfg.use_sample_bounds) effective.bounds = sample.bounds;

  RewardBreakdown out;
  auto fmt = format_reward(text, sample.future.size(), effective);
  out.parse_cause = fmt.cause;
  out.out_of_bounds = fmt.out_of_bounds;
  if (fmt.reward == 0.0) return out;

  const auto& pred = fmt.parsed->trajectory;
  out.format = 1.0;
  out.center = center_reward(pred, sample.future, effective);
  out.points = pointwise_reward(pred, sample.future, effective);
  out.total = out.format + out.center + out.points;
  return out;
}

}  // namespace shiptraj::reward
