// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "shiptraj/error.hpp"
#include "shiptraj/textio.hpp"

namespace shiptraj::metrics {
namespace {

void check_shapes(const TrajectoryList& preds, const TrajectoryList& truths) {
  if (preds.size() != truths.size()) {
    throw Error(Errc::kLengthMismatch, std::to_string(preds.size()) + " predictions for " +
                                           std::to_string(truths.size()) + " ground truths");
  }
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].size() != truths[i].size() || preds[i].empty()) {
      throw Error(Errc::kLengthMismatch, "trajectory " + std::to_string(i) + " lengths differ");
    }
  }
}

double deg_error(const GeoPoint& a, const GeoPoint& b) { return std::hypot(a.lon - b.lon, a.lat - b.lat); }

template <typename Err>
double final_error(const TrajectoryList& preds, const TrajectoryList& truths, Err err) {
  check_shapes(preds, truths);
  if (preds.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) sum += err(preds[i].back(), truths[i].back());
  return sum / static_cast<double>(preds.size());
}

template <typename Err>
double average_error(const TrajectoryList& preds, const TrajectoryList& truths, Err err) {
  check_shapes(preds, truths);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t t = 0; t < preds[i].size(); ++t) sum += err(preds[i][t], truths[i][t]);
    count += preds[i].size();
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace

double fde(const TrajectoryList& preds, const TrajectoryList& truths) {
  return final_error(preds, truths, deg_error);
}
double ade(const TrajectoryList& preds, const TrajectoryList& truths) {
  return average_error(preds, truths, deg_error);
}
double fde_m(const TrajectoryList& preds, const TrajectoryList& truths) {
  return final_error(preds, truths, geo::vincenty_distance);
}
double ade_m(const TrajectoryList& preds, const TrajectoryList& truths) {
  return average_error(preds, truths, geo::vincenty_distance);
}

EvalResult evaluate_completions(const std::vector<ModelOutput>& outputs,
                                const std::vector<ais::PredictionSample>& samples, bool cot,
                                UnparsableStrategy strategy) {
  std::unordered_map<std::string, const ais::PredictionSample*> by_id;
  for (const auto& s : samples) by_id.emplace(s.id, &s);

  EvalResult result;
  TrajectoryList preds, truths;
  std::vector<const std::string*> ids;
  for (const auto& out : outputs) {
    const auto it = by_id.find(out.sample_id);
    if (it == by_id.end()) throw Error(Errc::kUnknownSampleId, out.sample_id);
    const auto& sample = *it->second;
    auto parsed = textio::parse_output(out.text, sample.future.size(), cot);
    if (!parsed) {
      ++result.report.n_unparsable;
      if (strategy == UnparsableStrategy::kExclude) continue;
      preds.emplace_back(sample.future.size(), sample.observed.back());
    } else {
      preds.push_back(std::move(parsed.value().trajectory));
    }
    truths.push_back(sample.future);
    ids.push_back(&out.sample_id);
  }

  auto& rep = result.report;
  rep.n_trajectories = preds.size();
  rep.n_points = preds.empty() ? 0 : preds.front().size();
  rep.fde_deg = fde(preds, truths);
  rep.ade_deg = ade(preds, truths);
  rep.fde_m = fde_m(preds, truths);
  rep.ade_m = ade_m(preds, truths);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t t = 0; t < preds[i].size(); ++t) {
      result.errors.push_back({*ids[i], t + 1, deg_error(preds[i][t], truths[i][t]),
                               geo::vincenty_distance(preds[i][t], truths[i][t])});
    }
  }
  return result;
}

void write_errors_csv(std::ostream& out, const std::vector<PointError>& errors) {
  out << "sample_id,step,err_deg,err_m\n";
  char buf[96];
  for (const auto& e : errors) {
    std::snprintf(buf, sizeof buf, ",%zu,%.9f,%.3f\n", e.step, e.err_deg, e.err_m);
    out << e.sample_id << buf;
  }
}

}  // namespace shiptraj::metrics
