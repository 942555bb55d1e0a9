// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/ais_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "shiptraj/error.hpp"

namespace shiptraj {

Trajectory Trajectory::slice(std::size_t begin, std::size_t count) const {
  if (begin + count > points.size()) {
    throw Error(Errc::kIndexOutOfRange, "trajectory slice past end");
  }
  Trajectory out;
  out.mmsi = mmsi;
  out.t0 = time_at(begin);
  out.interval_s = interval_s;
  out.length_m = length_m;
  out.beam_m = beam_m;
  const auto first = static_cast<std::ptrdiff_t>(begin);
  const auto last = static_cast<std::ptrdiff_t>(begin + count);
  out.points.assign(points.begin() + first, points.begin() + last);
  if (!speeds.empty()) out.speeds.assign(speeds.begin() + first, speeds.begin() + last);
  if (!headings.empty()) out.headings.assign(headings.begin() + first, headings.begin() + last);
  return out;
}

}  // namespace shiptraj

namespace shiptraj::ais {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.emplace_back(trim(cur));
  return fields;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Epoch seconds, or an ISO-8601 style UTC date-time ("2021-03-01T12:00:05",
// space separator and a trailing 'Z' also accepted).
std::optional<double> parse_timestamp(std::string_view s) {
  if (auto v = parse_double(s)) return v;
  std::string text(trim(s));
  if (!text.empty() && text.back() == 'Z') text.pop_back();
  std::replace(text.begin(), text.end(), 'T', ' ');
  std::tm tm{};
  std::istringstream in(text);
  in >> std::get_time(&tm, "%Y-%m-%d %H:%M:%S");
  if (in.fail()) return std::nullopt;
  double frac = 0.0;
  if (in.peek() == '.') {
    std::string rest;
    in >> rest;
    auto f = parse_double("0" + rest);
    if (!f) return std::nullopt;
    frac = *f;
  }
  return static_cast<double>(timegm(&tm)) + frac;
}

struct ColumnIndex {
  std::optional<std::size_t> mmsi, ts, lon, lat, sog, cog, heading, length, beam;
};

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<double> optional_field(const std::vector<std::string>& row,
                                     const std::optional<std::size_t>& col, bool& bad) {
  if (!col || *col >= row.size() || trim(row[*col]).empty()) return std::nullopt;
  auto v = parse_double(row[*col]);
  if (!v) bad = true;
  return v;
}

double normalize_angle(double deg) {
  deg = std::fmod(deg, 360.0);
  if (deg < 0.0) deg += 360.0;
  return deg >= 360.0 ? 0.0 : deg;
}

}  // namespace

bool AisRecord::valid() const noexcept {
  auto in_range_angle = [](const std::optional<double>& v) {
    return !v || (std::isfinite(*v) && *v >= 0.0 && *v < 360.0);
  };
  auto positive = [](const std::optional<double>& v) { return !v || (std::isfinite(*v) && *v > 0.0); };
  return std::isfinite(timestamp) && timestamp > 0.0 && pos.valid() &&
         (!sog || (std::isfinite(*sog) && *sog >= 0.0)) && in_range_angle(cog) &&
         in_range_angle(heading) && positive(length) && positive(beam);
}

CsvParseResult parse_ais_csv_text(const std::string& text, const CsvSchema& schema) {
  std::istringstream in(text);
  std::string line;
  CsvParseResult result;
  if (!std::getline(in, line)) {
    throw Error(Errc::kSchemaError, "missing header row");
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = split_csv_line(line);
  ColumnIndex cols{find_column(header, schema.mmsi),    find_column(header, schema.timestamp),
                   find_column(header, schema.lon),     find_column(header, schema.lat),
                   find_column(header, schema.sog),     find_column(header, schema.cog),
                   find_column(header, schema.heading), find_column(header, schema.length),
                   find_column(header, schema.beam)};
  std::string missing;
  if (!cols.mmsi) missing += " " + schema.mmsi;
  if (!cols.ts) missing += " " + schema.timestamp;
  if (!cols.lon) missing += " " + schema.lon;
  if (!cols.lat) missing += " " + schema.lat;
  if (!missing.empty()) {
    throw Error(Errc::kSchemaError, "missing required column(s):" + missing);
  }

  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto row = split_csv_line(line);
    auto field = [&](std::size_t col) -> std::string_view {
      return col < row.size() ? std::string_view(row[col]) : std::string_view{};
    };
    const auto mmsi = parse_int(field(*cols.mmsi));
    const auto ts = parse_timestamp(field(*cols.ts));
    const auto lon = parse_double(field(*cols.lon));
    const auto lat = parse_double(field(*cols.lat));
    bool bad = !mmsi || !ts || !lon || !lat;
    AisRecord rec;
    if (!bad) {
      rec.mmsi = *mmsi;
      rec.timestamp = *ts;
      rec.pos = {*lon, *lat};
      rec.sog = optional_field(row, cols.sog, bad);
      rec.cog = optional_field(row, cols.cog, bad);
      rec.heading = optional_field(row, cols.heading, bad);
      rec.length = optional_field(row, cols.length, bad);
      rec.beam = optional_field(row, cols.beam, bad);
      // 511 is the AIS "heading not available" sentinel.
      if (rec.heading && *rec.heading == 511.0) rec.heading.reset();
    }
    if (bad || !rec.valid()) {
      ++result.skipped;
      continue;
    }
    result.records.push_back(rec);
  }
  return result;
}

CsvParseResult parse_ais_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(Errc::kIoError, "read failed: " + path.string());
  return parse_ais_csv_text(buf.str(), schema);
}

std::vector<RawTrack> segment_tracks(std::vector<AisRecord> records, double max_gap_s) {
  std::map<std::int64_t, std::vector<AisRecord>> by_vessel;
  for (auto& r : records) by_vessel[r.mmsi].push_back(r);

  std::vector<RawTrack> tracks;
  for (auto& [mmsi, recs] : by_vessel) {
    std::stable_sort(recs.begin(), recs.end(),
                     [](const AisRecord& a, const AisRecord& b) { return a.timestamp < b.timestamp; });
    recs.erase(std::unique(recs.begin(), recs.end(),
                           [](const AisRecord& a, const AisRecord& b) {
                             return a.timestamp == b.timestamp;
                           }),
               recs.end());
    RawTrack cur{mmsi, {}};
    auto flush = [&] {
      if (cur.records.size() >= kMinTrackPoints) tracks.push_back(std::move(cur));
      cur = RawTrack{mmsi, {}};
    };
    for (const auto& r : recs) {
      if (!cur.records.empty() && r.timestamp - cur.records.back().timestamp > max_gap_s) flush();
      cur.records.push_back(r);
    }
    flush();
  }
  return tracks;
}

std::vector<double> natural_spline(const std::vector<double>& xs, const std::vector<double>& ys,
                                   const std::vector<double>& at) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) {
    throw Error(Errc::kInvalidArgument, "spline needs at least two matching knots");
  }
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs[i + 1] - xs[i];
    if (!(h[i] > 0.0)) throw Error(Errc::kDegenerateTime, "spline knots not strictly increasing");
  }

  // Second derivatives M with M_0 = M_{n-1} = 0; tridiagonal system for the
  // interior, solved with the Thomas algorithm.
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    const std::size_t k = n - 2;
    std::vector<double> diag(k), upper(k), rhs(k);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t i = j + 1;
      diag[j] = 2.0 * (h[i - 1] + h[i]);
      upper[j] = h[i];
      rhs[j] = 6.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]);
    }
    for (std::size_t j = 1; j < k; ++j) {
      const double w = h[j] / diag[j - 1];  // sub-diagonal entry of row j is h[j]
      diag[j] -= w * upper[j - 1];
      rhs[j] -= w * rhs[j - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) {
      m[j + 1] = (rhs[j] - upper[j] * m[j + 2]) / diag[j];
    }
  }

  std::vector<double> out;
  out.reserve(at.size());
  for (double x : at) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    if (i >= n - 1) i = n - 2;
    const double hi = h[i];
    const double a = xs[i + 1] - x;
    const double b = x - xs[i];
    out.push_back(m[i] * a * a * a / (6.0 * hi) + m[i + 1] * b * b * b / (6.0 * hi) +
                  (ys[i] / hi - m[i] * hi / 6.0) * a + (ys[i + 1] / hi - m[i + 1] * hi / 6.0) * b);
  }
  return out;
}

Trajectory spline_resample(const RawTrack& track, double interval_s) {
  const auto& recs = track.records;
  if (recs.size() < kMinTrackPoints) {
    throw Error(Errc::kTooShort, "need at least 4 points, got " + std::to_string(recs.size()));
  }
  if (!(interval_s > 0.0)) throw Error(Errc::kInvalidArgument, "interval must be positive");
  for (std::size_t i = 1; i < recs.size(); ++i) {
    if (!(recs[i].timestamp > recs[i - 1].timestamp)) {
      throw Error(Errc::kDegenerateTime, "timestamps not strictly increasing");
    }
  }

  const double origin = recs.front().timestamp;
  const double first_grid = std::ceil(origin / interval_s) * interval_s;
  const double last = recs.back().timestamp;

  std::vector<double> xs, lons, lats, query;
  xs.reserve(recs.size());
  for (const auto& r : recs) {
    xs.push_back(r.timestamp - origin);
    lons.push_back(r.pos.lon);
    lats.push_back(r.pos.lat);
  }
  for (std::size_t i = 0;; ++i) {
    const double t = first_grid + static_cast<double>(i) * interval_s;
    if (t > last) break;
    query.push_back(t - origin);
  }
  if (query.size() < 2) {
    throw Error(Errc::kTooShort, "track spans fewer than two grid points");
  }

  Trajectory out;
  out.mmsi = track.mmsi;
  out.t0 = first_grid;
  out.interval_s = interval_s;
  const auto lon_s = natural_spline(xs, lons, query);
  const auto lat_s = natural_spline(xs, lats, query);
  out.points.reserve(query.size());
  for (std::size_t i = 0; i < query.size(); ++i) out.points.push_back({lon_s[i], lat_s[i]});

  const bool have_sog = std::all_of(recs.begin(), recs.end(), [](const auto& r) { return r.sog.has_value(); });
  const bool have_heading =
      std::all_of(recs.begin(), recs.end(), [](const auto& r) { return r.heading.has_value(); });
  if (have_sog || have_heading) {
    for (double q : query) {
      auto it = std::upper_bound(xs.begin(), xs.end(), q);
      std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
      if (i >= xs.size() - 1) i = xs.size() - 2;
      const double w = (q - xs[i]) / (xs[i + 1] - xs[i]);
      if (have_sog) out.speeds.push_back(*recs[i].sog + w * (*recs[i + 1].sog - *recs[i].sog));
      if (have_heading) {
        double d = std::remainder(*recs[i + 1].heading - *recs[i].heading, 360.0);
        out.headings.push_back(normalize_angle(*recs[i].heading + w * d));
      }
    }
  }
  for (const auto& r : recs) {
    if (!out.length_m && r.length) out.length_m = r.length;
    if (!out.beam_m && r.beam) out.beam_m = r.beam;
  }
  return out;
}

std::string PredictionSample::source_id() const {
  const auto pos = id.rfind('-');
  return pos == std::string::npos ? id : id.substr(0, pos);
}

void PredictionSample::validate() const {
  auto fail = [&](const std::string& why) {
    throw Error(Errc::kInvalidArgument, "sample " + id + ": " + why);
  };
  if (observed.size() < 2) fail("observed window shorter than 2");
  if (future.empty()) fail("empty future window");
  if (!(interval_s > 0.0)) fail("non-positive interval");
  if (!bounds.valid()) fail("invalid bounds");
  for (const auto& p : observed) if (!p.valid()) fail("invalid observed point");
  for (const auto& p : future) if (!p.valid()) fail("invalid future point");
  for (const auto& c : conflicts) {
    if (c.points.size() != observed.size()) fail("conflict track not aligned with observed window");
  }
}

std::vector<PredictionSample> build_samples(const std::vector<Trajectory>& trajectories,
                                            const SampleConfig& cfg) {
  if (cfg.t_obs < 2 || cfg.t_pred < 1) {
    throw Error(Errc::kInvalidArgument, "t_obs must be >= 2 and t_pred >= 1");
  }
  const std::size_t window = cfg.t_obs + cfg.t_pred;
  const std::size_t stride = cfg.stride == 0 ? window : cfg.stride;

  std::vector<std::size_t> segment_index(trajectories.size());
  {
    std::unordered_map<std::int64_t, std::size_t> seen;
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      segment_index[i] = seen[trajectories[i].mmsi]++;
    }
  }

  std::vector<PredictionSample> samples;
  for (std::size_t ti = 0; ti < trajectories.size(); ++ti) {
    const Trajectory& traj = trajectories[ti];
    std::size_t window_idx = 0;
    for (std::size_t start = 0; start + window <= traj.size(); start += stride, ++window_idx) {
      bool inside = true;
      for (std::size_t i = start; i < start + window && inside; ++i) {
        inside = geo::contains(cfg.bounds, traj.points[i]);
      }
      if (!inside) continue;

      const Trajectory target = traj.slice(start, cfg.t_obs);
      std::vector<Trajectory> slices;
      for (std::size_t nj = 0; nj < trajectories.size(); ++nj) {
        const Trajectory& other = trajectories[nj];
        if (nj == ti || other.mmsi == traj.mmsi || other.interval_s != traj.interval_s) continue;
        const double offset = (target.t0 - other.t0) / other.interval_s;
        const double rounded = std::round(offset);
        if (rounded < 0.0 || std::fabs(offset - rounded) > 1e-6) continue;
        const auto first = static_cast<std::size_t>(rounded);
        if (first + cfg.t_obs > other.size()) continue;
        slices.push_back(other.slice(first, cfg.t_obs));
        slices.back().t0 = target.t0;
      }
      std::vector<domain::Neighbor> neighbors;
      neighbors.reserve(slices.size());
      for (const auto& s : slices) neighbors.push_back({s.mmsi, &s});

      const auto ship = domain::target_ship_for(target, cfg.domain);
      const auto reports =
          domain::detect_conflicts(target, ship, neighbors, cfg.domain.k, cfg.domain.scale);

      PredictionSample sample;
      sample.id = std::to_string(traj.mmsi) + "-" + std::to_string(segment_index[ti]) + "-" +
                  std::to_string(window_idx);
      sample.region = cfg.region;
      sample.mmsi = traj.mmsi;
      sample.t0 = target.t0;
      sample.interval_s = traj.interval_s;
      sample.observed = target.points;
      sample.future.assign(traj.points.begin() + static_cast<std::ptrdiff_t>(start + cfg.t_obs),
                           traj.points.begin() + static_cast<std::ptrdiff_t>(start + window));
      sample.bounds = cfg.bounds;
      for (const auto& rep : reports) {
        const auto it = std::find_if(slices.begin(), slices.end(),
                                     [&](const Trajectory& s) { return s.mmsi == rep.neighbor_mmsi; });
        sample.conflicts.push_back({rep.neighbor_mmsi, it->points, rep.min_f, rep.intruded_steps});
      }
      sample.validate();
      samples.push_back(std::move(sample));
    }
  }
  return samples;
}

DatasetSplit split_dataset(const std::vector<PredictionSample>& samples, std::uint64_t seed) {
  std::vector<std::string> sources;
  for (const auto& s : samples) sources.push_back(s.source_id());
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

  // Fisher-Yates over the raw engine output keeps the permutation identical
  // across standard library implementations.
  std::mt19937_64 rng(seed);
  for (std::size_t i = sources.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(sources[i - 1], sources[j]);
  }

  const std::size_t n = sources.size();
  auto share = [n](double frac) {
    auto c = static_cast<std::size_t>(std::llround(frac * static_cast<double>(n)));
    return n >= 20 ? std::max<std::size_t>(c, 1) : c;
  };
  const std::size_t n_val = share(0.05);
  const std::size_t n_test = share(0.05);
  const std::size_t n_train = n - std::min(n, n_val + n_test);

  DatasetSplit split;
  std::unordered_map<std::string, int> bucket;
  for (std::size_t i = 0; i < n; ++i) {
    const int b = i < n_train ? 0 : (i < n_train + n_val ? 1 : 2);
    bucket[sources[i]] = b;
    (b == 0 ? split.train_sources : b == 1 ? split.val_sources : split.test_sources)
        .push_back(sources[i]);
  }
  for (auto* v : {&split.train_sources, &split.val_sources, &split.test_sources}) {
    std::sort(v->begin(), v->end());
  }
  for (const auto& s : samples) {
    const int b = bucket.at(s.source_id());
    (b == 0 ? split.train : b == 1 ? split.val : split.test).push_back(s);
  }
  return split;
}

}  // namespace shiptraj::ais
