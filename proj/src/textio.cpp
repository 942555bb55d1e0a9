// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/textio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace shiptraj::textio {
namespace {

using nlohmann::json;

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

std::size_t count_of(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  });
}

ParseFailure fail(ParseCause cause, std::string detail) { return {cause, std::move(detail)}; }

void append_point_line(std::string& out, std::string_view indent, long offset, const GeoPoint& p) {
  out += indent;
  out += offset == 0 ? std::string("t0") : "t" + std::to_string(offset);
  out += ": [";
  out += format_coord(p.lon);
  out += ", ";
  out += format_coord(p.lat);
  out += "]\n";
}

}  // namespace

std::string_view parse_cause_name(ParseCause cause) {
  switch (cause) {
    case ParseCause::kMissingTags: return "MissingTags";
    case ParseCause::kDuplicateTags: return "DuplicateTags";
    case ParseCause::kBadObject: return "BadObject";
    case ParseCause::kWrongLength: return "WrongLength";
    case ParseCause::kNonNumeric: return "NonNumeric";
  }
  return "Unknown";
}

std::string format_coord(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

PromptText build_prompt(const ais::PredictionSample& sample, std::size_t t_pred,
                        const PromptOptions& opts) {
  const std::string n = std::to_string(t_pred);
  const std::string interval = format_coord(sample.interval_s);
  const auto& b = sample.bounds;

  PromptText prompt;
  std::string& sys = prompt.system;
  sys += "[";
  sys += kPromptTemplateVersion;
  sys += "]\n";
  sys += "You are a maritime navigation assistant that predicts ship trajectories from AIS data.\n";
  if (opts.cot) {
    sys += "First reason step by step about the target ship's motion and about the nearby ships "
           "that pose a conflict risk, then predict its next " + n + " positions.\n";
    sys += "Output format (strict):\n<think> your reasoning </think>\n"
           "<answer>{\"trajectory\": [[lon, lat], ...]}</answer>\n";
  } else {
    sys += "Predict the target ship's next " + n + " positions.\n";
    sys += "Output format (strict):\n<answer>{\"trajectory\": [[lon, lat], ...]}</answer>\n";
  }
  sys += "The answer must be an object with the key \"trajectory\" holding exactly " + n +
         " [lon, lat] pairs in decimal degrees, one per " + interval + " s step.\n";
  sys += "Every predicted point must lie within the region bounds: longitude " +
         format_coord(b.lon_min) + " to " + format_coord(b.lon_max) + ", latitude " +
         format_coord(b.lat_min) + " to " + format_coord(b.lat_max) + ".\n";
  sys += "Write nothing outside the tags.\n";

  std::string& user = prompt.user;
  const long t_obs = static_cast<long>(sample.observed.size());
  user += "Region: " + sample.region + "\n";
  user += "Sampling interval: " + interval + " s\n";
  user += "Target ship (MMSI " + std::to_string(sample.mmsi) + ") observed positions, oldest first, " +
          std::to_string(t_obs) + " points:\n";
  for (long i = 0; i < t_obs; ++i) {
    append_point_line(user, "", i - (t_obs - 1), sample.observed[static_cast<std::size_t>(i)]);
  }

  std::vector<const ais::ConflictTrack*> conflicts;
  for (const auto& c : sample.conflicts) conflicts.push_back(&c);
  std::stable_sort(conflicts.begin(), conflicts.end(),
                   [](const auto* a, const auto* c) { return a->min_f < c->min_f; });
  if (conflicts.size() > opts.max_conflicts) conflicts.resize(opts.max_conflicts);

  if (conflicts.empty()) {
    user += kNoConflictSentence;
    user += "\n";
  } else {
    user += "Conflicting ships inside the target's ship domain, most severe first, "
            "time-aligned with the observed positions:\n";
    for (std::size_t c = 0; c < conflicts.size(); ++c) {
      const auto& ship = *conflicts[c];
      user += "Ship " + std::to_string(c + 1) + " (MMSI " + std::to_string(ship.mmsi) + "):\n";
      const long len = static_cast<long>(ship.points.size());
      for (long i = 0; i < len; ++i) {
        append_point_line(user, "  ", i - (len - 1), ship.points[static_cast<std::size_t>(i)]);
      }
    }
  }
  user += "Predict the next " + n + " positions of the target ship.\n";
  return prompt;
}

ParseOutcome parse_output(std::string_view text, std::size_t t_pred, bool cot) {
  const std::size_t n_to = count_of(text, kThinkOpen);
  const std::size_t n_tc = count_of(text, kThinkClose);
  const std::size_t n_ao = count_of(text, kAnswerOpen);
  const std::size_t n_ac = count_of(text, kAnswerClose);

  if (n_to > 1 || n_tc > 1 || n_ao > 1 || n_ac > 1) {
    return fail(ParseCause::kDuplicateTags, "tag appears more than once");
  }
  if (n_ao == 0 || n_ac == 0) return fail(ParseCause::kMissingTags, "answer block missing");
  const bool has_think = n_to == 1 || n_tc == 1;
  if (has_think && (n_to == 0 || n_tc == 0)) {
    return fail(ParseCause::kMissingTags, "unbalanced think tags");
  }
  if (cot && !has_think) return fail(ParseCause::kMissingTags, "think block missing");

  const std::size_t ao = text.find(kAnswerOpen);
  const std::size_t ac = text.find(kAnswerClose);
  std::string think;
  std::size_t answer_region_start = 0;
  if (has_think) {
    const std::size_t to = text.find(kThinkOpen);
    const std::size_t tc = text.find(kThinkClose);
    if (!(to < tc && tc < ao && ao < ac)) {
      return fail(ParseCause::kMissingTags, "tags out of order");
    }
    if (!is_blank(text.substr(0, to))) {
      return fail(ParseCause::kMissingTags, "text before think block");
    }
    think = std::string(text.substr(to + kThinkOpen.size(), tc - to - kThinkOpen.size()));
    answer_region_start = tc + kThinkClose.size();
  } else if (ao > ac) {
    return fail(ParseCause::kMissingTags, "tags out of order");
  }
  if (!is_blank(text.substr(answer_region_start, ao - answer_region_start)) ||
      !is_blank(text.substr(ac + kAnswerClose.size()))) {
    return fail(ParseCause::kMissingTags, "text outside tags");
  }

  const std::string_view body = text.substr(ao + kAnswerOpen.size(), ac - ao - kAnswerOpen.size());
  const json doc = json::parse(body.begin(), body.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return fail(ParseCause::kBadObject, "answer is not an object");
  }
  const auto it = doc.find("trajectory");
  if (it == doc.end() || !it->is_array()) {
    return fail(ParseCause::kBadObject, "missing \"trajectory\" list");
  }
  if (it->size() != t_pred) {
    return fail(ParseCause::kWrongLength, "expected " + std::to_string(t_pred) + " points, got " +
                                              std::to_string(it->size()));
  }

  ParsedOutput out;
  out.think = std::move(think);
  out.raw = std::string(text);
  out.trajectory.reserve(t_pred);
  for (const auto& pair : *it) {
    if (!pair.is_array() || pair.size() != 2) {
      return fail(ParseCause::kBadObject, "coordinate is not a [lon, lat] pair");
    }
    if (!pair[0].is_number() || !pair[1].is_number()) {
      return fail(ParseCause::kNonNumeric, "coordinate is not numeric");
    }
    const double lon = pair[0].get<double>();
    const double lat = pair[1].get<double>();
    if (!std::isfinite(lon) || !std::isfinite(lat)) {
      return fail(ParseCause::kNonNumeric, "coordinate is not finite");
    }
    out.trajectory.push_back({lon, lat});
  }
  return out;
}

std::string render_answer(std::span<const GeoPoint> trajectory, std::string_view think, bool cot) {
  std::string out;
  if (cot) {
    out += kThinkOpen;
    out += think;
    out += kThinkClose;
  }
  out += kAnswerOpen;
  out += "{\"trajectory\": [";
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (i) out += ", ";
    out += "[" + format_coord(trajectory[i].lon) + ", " + format_coord(trajectory[i].lat) + "]";
  }
  out += "]}";
  out += kAnswerClose;
  return out;
}

}  // namespace shiptraj::textio
