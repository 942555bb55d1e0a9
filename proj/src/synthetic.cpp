// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace shiptraj::synth {
namespace {

constexpr double kMetersPerSecondPerKnot = 1852.0 / 3600.0;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Vessel {
  geo::GeoPoint start;
  double dlon = 0.0;  // degrees per second
  double dlat = 0.0;
  double speed_kn = 0.0;
  double heading_deg = 0.0;
};

std::vector<Vessel> draw_fleet(const FleetConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<Vessel> fleet;
  fleet.reserve(cfg.vessels);
  for (std::size_t i = 0; i < cfg.vessels; ++i) {
    Vessel v;
    v.start = {uniform(rng, cfg.area.lon_min, cfg.area.lon_max),
               uniform(rng, cfg.area.lat_min, cfg.area.lat_max)};
    v.heading_deg = std::floor(uniform(rng, 0.0, 360.0) * 1000.0) / 1000.0;
    v.speed_kn = uniform(rng, cfg.min_speed_kn, cfg.max_speed_kn);
    const double mps = v.speed_kn * kMetersPerSecondPerKnot;
    const double h = v.heading_deg * std::numbers::pi / 180.0;
    v.dlon = mps * std::sin(h) / geo::meters_per_deg_lon(v.start.lat);
    v.dlat = mps * std::cos(h) / geo::meters_per_deg_lat(v.start.lat);
    fleet.push_back(v);
  }
  return fleet;
}

}  // namespace

std::vector<Trajectory> constant_velocity_fleet(const FleetConfig& cfg) {
  std::vector<Trajectory> out;
  for (std::size_t i = 0; const auto& v : draw_fleet(cfg)) {
    Trajectory t;
    t.mmsi = cfg.first_mmsi + static_cast<std::int64_t>(i++);
    t.t0 = cfg.t_start;
    t.interval_s = cfg.interval_s;
    for (std::size_t k = 0; k < cfg.points; ++k) {
      const double dt = static_cast<double>(k) * cfg.interval_s;
      t.points.push_back({v.start.lon + v.dlon * dt, v.start.lat + v.dlat * dt});
      t.speeds.push_back(v.speed_kn);
      t.headings.push_back(v.heading_deg);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<ais::AisRecord> constant_velocity_records(const FleetConfig& cfg, double jitter_s) {
  std::mt19937_64 rng(cfg.seed ^ 0x5EEDULL);
  std::vector<ais::AisRecord> out;
  for (std::size_t i = 0; const auto& v : draw_fleet(cfg)) {
    const std::int64_t mmsi = cfg.first_mmsi + static_cast<std::int64_t>(i++);
    for (std::size_t k = 0; k < cfg.points; ++k) {
      double dt = static_cast<double>(k) * cfg.interval_s;
      if (k > 0 && k + 1 < cfg.points) dt += uniform(rng, -jitter_s, jitter_s);
      ais::AisRecord r;
      r.mmsi = mmsi;
      r.timestamp = cfg.t_start + dt;
      r.pos = {v.start.lon + v.dlon * dt, v.start.lat + v.dlat * dt};
      r.sog = v.speed_kn;
      r.cog = v.heading_deg;
      r.heading = v.heading_deg;
      r.length = 100.0;
      r.beam = 16.0;
      out.push_back(r);
    }
  }
  return out;
}

std::string records_to_csv(const std::vector<ais::AisRecord>& records) {
  std::string out = "mmsi,ts,lon,lat,sog,cog,heading,length,beam\n";
  char buf[128];
  auto opt = [&](const std::optional<double>& v, const char* fmt) {
    out += ',';
    if (!v) return;
    std::snprintf(buf, sizeof buf, fmt, *v);
    out += buf;
  };
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%lld,%.3f,%.9f,%.9f", static_cast<long long>(r.mmsi),
                  r.timestamp, r.pos.lon, r.pos.lat);
    out += buf;
    opt(r.sog, "%.3f");
    opt(r.cog, "%.3f");
    opt(r.heading, "%.3f");
    opt(r.length, "%.1f");
    opt(r.beam, "%.1f");
    out += '\n';
  }
  return out;
}

}  // namespace shiptraj::synth
