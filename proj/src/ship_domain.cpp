// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/ship_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiptraj/error.hpp"

namespace shiptraj::domain {
namespace {

constexpr double kMetersPerSecondPerKnot = 1852.0 / 3600.0;

// One axis of f_k: 2v / ((1 + sgn v) r_pos - (1 - sgn v) r_neg), sgn 0 -> +1.
double axis_ratio(double v, double r_pos, double r_neg) {
  const double sgn = v >= 0.0 ? 1.0 : -1.0;
  return 2.0 * v / ((1.0 + sgn) * r_pos - (1.0 - sgn) * r_neg);
}

}  // namespace

bool QsdParams::valid() const noexcept {
  return r_fore > 0.0 && r_aft > 0.0 && r_starb > 0.0 && r_port > 0.0 && (k == 1 || k == 2);
}

QsdParams QsdParams::scaled(double factor) const noexcept {
  return {r_fore * factor, r_aft * factor, r_starb * factor, r_port * factor, k};
}

QsdParams qsd_radii(double length_m, double speed_kn, int k) {
  if (!(length_m > 0.0) || !std::isfinite(length_m)) {
    throw Error(Errc::kInvalidShip, "ship length must be positive");
  }
  if (!(speed_kn >= 0.0)) throw Error(Errc::kInvalidShip, "speed must be non-negative");
  if (k != 1 && k != 2) throw Error(Errc::kInvalidArgument, "k must be 1 or 2");
  const double v = std::max(speed_kn, 1.0);
  const double k_ad = std::pow(10.0, 0.3591 * std::log10(v) + 0.0952);
  const double k_dt = std::pow(10.0, 0.5441 * std::log10(v) - 0.0795);
  const double reach = std::hypot(k_ad, k_dt / 2.0);
  return {length_m * (1.0 + 1.34 * reach), length_m * (1.0 + 0.67 * reach),
          length_m * (0.2 + k_dt), length_m * (0.2 + 0.75 * k_dt), k};
}

DomainTest qsd_contains(const QsdParams& params, const geo::LocalXY& rel) noexcept {
  const double fx = axis_ratio(rel.x, params.r_fore, params.r_aft);
  const double fy = axis_ratio(rel.y, params.r_starb, params.r_port);
  const double f = params.k == 1 ? fx + fy : fx * fx + fy * fy;
  return {f <= 1.0, f};
}

std::vector<double> step_headings(const Trajectory& track) {
  if (track.headings.size() == track.size()) return track.headings;
  std::vector<double> out(track.size(), 0.0);
  for (std::size_t i = 0; i + 1 < track.size(); ++i) {
    const auto& a = track.points[i];
    const auto& b = track.points[i + 1];
    // Stationary steps keep the previous bearing.
    out[i] = (a == b && i > 0) ? out[i - 1] : geo::local_bearing_deg(a, b);
  }
  if (track.size() >= 2) out.back() = out[track.size() - 2];
  return out;
}

std::vector<double> step_speeds(const Trajectory& track, double default_speed_kn) {
  if (track.speeds.size() == track.size()) return track.speeds;
  std::vector<double> out(track.size(), default_speed_kn);
  if (track.size() < 2) return out;
  for (std::size_t i = 0; i + 1 < track.size(); ++i) {
    const double d = geo::vincenty_distance(track.points[i], track.points[i + 1]);
    out[i] = d / track.interval_s / kMetersPerSecondPerKnot;
  }
  out.back() = out[track.size() - 2];
  return out;
}

TargetShip target_ship_for(const Trajectory& track, const ConflictConfig& cfg) {
  TargetShip ship;
  ship.length_m = track.length_m.value_or(cfg.default_length_m);
  ship.speeds_kn = step_speeds(track, cfg.default_speed_kn);
  ship.headings_deg = step_headings(track);
  return ship;
}

std::vector<ConflictReport> detect_conflicts(const Trajectory& target, const TargetShip& ship,
                                             const std::vector<Neighbor>& neighbors, int k,
                                             double scale) {
  const std::size_t n = target.size();
  if (!ship.speeds_kn.empty() && ship.speeds_kn.size() != n) {
    throw Error(Errc::kMisalignedWindows, "speed series length differs from target window");
  }
  std::vector<double> headings = ship.headings_deg;
  if (headings.empty()) headings = step_headings(target);
  if (headings.size() != n) {
    throw Error(Errc::kMisalignedWindows, "heading series length differs from target window");
  }

  std::vector<QsdParams> domains;
  domains.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double v = ship.speeds_kn.empty() ? 0.0 : ship.speeds_kn[t];
    domains.push_back(qsd_radii(ship.length_m, v, k).scaled(scale));
  }

  std::vector<ConflictReport> reports;
  for (const auto& nb : neighbors) {
    const Trajectory& other = *nb.track;
    if (other.size() != n || other.interval_s != target.interval_s ||
        std::fabs(other.t0 - target.t0) > 1e-6) {
      throw Error(Errc::kMisalignedWindows,
                  "neighbor " + std::to_string(nb.mmsi) + " is not on the target's time grid");
    }
    ConflictReport rep{target.mmsi, nb.mmsi, {}, std::numeric_limits<double>::infinity()};
    for (std::size_t t = 0; t < n; ++t) {
      geo::LocalXY rel;
      try {
        rel = geo::to_local_xy(target.points[t], headings[t], other.points[t]);
      } catch (const Error& e) {
        if (e.code() == Errc::kRangeExceeded) continue;
        throw;
      }
      const auto test = qsd_contains(domains[t], rel);
      rep.min_f = std::min(rep.min_f, test.f);
      if (test.inside) rep.intruded_steps.push_back(t);
    }
    if (!rep.intruded_steps.empty()) reports.push_back(std::move(rep));
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const ConflictReport& a, const ConflictReport& b) { return a.min_f < b.min_f; });
  return reports;
}

}  // namespace shiptraj::domain
