// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "shiptraj/error.hpp"

namespace shiptraj::io {
namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;
using geo::GeoPoint;

void append_points(std::string& out, const std::vector<GeoPoint>& pts) {
  out += '[';
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ',';
    out += '[' + textio::format_coord(pts[i].lon) + ',' + textio::format_coord(pts[i].lat) + ']';
  }
  out += ']';
}

std::vector<GeoPoint> points_from(const json& arr, const char* field) {
  if (!arr.is_array()) throw Error(Errc::kSchemaError, std::string(field) + " is not a list");
  std::vector<GeoPoint> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw Error(Errc::kSchemaError, std::string(field) + " holds a non-[lon, lat] entry");
    }
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

const json& require(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw Error(Errc::kSchemaError, std::string("missing field \"") + key + "\"");
  return *it;
}

json parse_line(const std::string& line) {
  json doc = json::parse(line, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(Errc::kSchemaError, "line is not a JSON object: " + line.substr(0, 80));
  }
  return doc;
}

}  // namespace

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
  }
  if (in.bad()) throw Error(Errc::kIoError, "read failed: " + path.string());
  return lines;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::kIoError, "write failed: " + path.string());
}

std::string sample_to_json(const ais::PredictionSample& s) {
  std::string out = "{\"id\":" + json(s.id).dump() + ",\"region\":" + json(s.region).dump() +
                    ",\"t0\":" + json(s.t0).dump() + ",\"interval_s\":" + json(s.interval_s).dump() +
                    ",\"obs\":";
  append_points(out, s.observed);
  out += ",\"future\":";
  append_points(out, s.future);
  out += ",\"conflicts\":[";
  for (std::size_t i = 0; i < s.conflicts.size(); ++i) {
    if (i) out += ',';
    out += "{\"mmsi\":" + std::to_string(s.conflicts[i].mmsi) + ",\"traj\":";
    append_points(out, s.conflicts[i].points);
    out += '}';
  }
  const auto& b = s.bounds;
  out += "],\"bounds\":{\"lon_min\":" + textio::format_coord(b.lon_min) +
         ",\"lon_max\":" + textio::format_coord(b.lon_max) +
         ",\"lat_min\":" + textio::format_coord(b.lat_min) +
         ",\"lat_max\":" + textio::format_coord(b.lat_max) + "}}";
  return out;
}

ais::PredictionSample sample_from_json(const std::string& line) {
  const json doc = parse_line(line);
  ais::PredictionSample s;
  try {
    s.id = require(doc, "id").get<std::string>();
    s.region = require(doc, "region").get<std::string>();
    s.t0 = require(doc, "t0").get<double>();
    s.interval_s = require(doc, "interval_s").get<double>();
    s.observed = points_from(require(doc, "obs"), "obs");
    s.future = points_from(require(doc, "future"), "future");
    for (const auto& c : require(doc, "conflicts")) {
      ais::ConflictTrack track;
      track.mmsi = require(c, "mmsi").get<std::int64_t>();
      track.points = points_from(require(c, "traj"), "traj");
      s.conflicts.push_back(std::move(track));
    }
    const auto& b = require(doc, "bounds");
    s.bounds = {require(b, "lon_min").get<double>(), require(b, "lon_max").get<double>(),
                require(b, "lat_min").get<double>(), require(b, "lat_max").get<double>()};
  } catch (const json::exception& e) {
    throw Error(Errc::kSchemaError, std::string("sample field has the wrong type: ") + e.what());
  }
  const auto dash = s.id.find('-');
  std::int64_t mmsi = 0;
  const auto head = s.id.substr(0, dash);
  if (std::from_chars(head.data(), head.data() + head.size(), mmsi).ec == std::errc{}) s.mmsi = mmsi;
  try {
    s.validate();
  } catch (const Error& e) {
    throw Error(Errc::kSchemaError, e.what());
  }
  return s;
}

void write_samples(const std::filesystem::path& path,
                   const std::vector<ais::PredictionSample>& samples) {
  std::string text;
  for (const auto& s : samples) text += sample_to_json(s) + "\n";
  write_text(path, text);
}

std::vector<ais::PredictionSample> read_samples(const std::filesystem::path& path) {
  std::vector<ais::PredictionSample> out;
  for (const auto& line : read_lines(path)) out.push_back(sample_from_json(line));
  return out;
}

std::string prompt_to_json(const std::string& sample_id, const textio::PromptText& prompt,
                           std::size_t t_pred) {
  ojson doc = ojson::object();
  doc["sample_id"] = sample_id;
  doc["system"] = prompt.system;
  doc["user"] = prompt.user;
  doc["T_pred"] = t_pred;
  return doc.dump();
}

std::vector<PromptRecord> read_prompts(const std::filesystem::path& path) {
  std::vector<PromptRecord> out;
  for (const auto& line : read_lines(path)) {
    const json doc = parse_line(line);
    try {
      out.push_back({require(doc, "sample_id").get<std::string>(),
                     {require(doc, "system").get<std::string>(), require(doc, "user").get<std::string>()},
                     require(doc, "T_pred").get<std::size_t>()});
    } catch (const json::exception& e) {
      throw Error(Errc::kSchemaError, std::string("prompt record: ") + e.what());
    }
  }
  return out;
}

std::string completion_to_json(const llm::CompletionRecord& r) {
  ojson doc = ojson::object();
  doc["sample_id"] = r.sample_id;
  doc["text"] = r.text;
  doc["latency_ms"] = r.latency_ms;
  doc["status"] = r.status;
  if (!r.error.empty()) doc["error"] = r.error;
  return doc.dump(-1, ' ', false, ojson::error_handler_t::replace);
}

std::vector<llm::CompletionRecord> read_completions(const std::filesystem::path& path) {
  std::vector<llm::CompletionRecord> out;
  for (const auto& line : read_lines(path)) {
    const json doc = parse_line(line);
    llm::CompletionRecord r;
    try {
      r.sample_id = require(doc, "sample_id").get<std::string>();
      r.text = require(doc, "text").get<std::string>();
      r.latency_ms = doc.value("latency_ms", 0.0);
      r.status = doc.value("status", std::string("ok"));
      r.error = doc.value("error", std::string());
    } catch (const json::exception& e) {
      throw Error(Errc::kSchemaError, std::string("completion record: ") + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_completions(const std::filesystem::path& path,
                       const std::vector<llm::CompletionRecord>& records) {
  std::string text;
  for (const auto& r : records) text += completion_to_json(r) + "\n";
  write_text(path, text);
}

std::string score_to_json(const std::string& sample_id, std::size_t completion_index,
                          const reward::RewardBreakdown& b) {
  ojson doc = ojson::object();
  doc["sample_id"] = sample_id;
  doc["completion_index"] = completion_index;
  doc["format"] = b.format;
  doc["center"] = b.center;
  doc["points"] = b.points;
  doc["total"] = b.total;
  if (b.parse_cause) {
    doc["parse_cause"] = std::string(textio::parse_cause_name(*b.parse_cause));
  } else if (b.out_of_bounds) {
    doc["parse_cause"] = "OutOfBounds";
  } else {
    doc["parse_cause"] = nullptr;
  }
  return doc.dump();
}

std::string step_log_to_json(const grpo::StepLog& log) {
  ojson doc = ojson::object();
  doc["step"] = log.step;
  doc["mean_reward"] = log.mean_reward;
  doc["mean_kl"] = log.mean_kl;
  doc["clip_fraction"] = log.clip_fraction;
  doc["objective"] = log.objective;
  return doc.dump();
}

std::string eval_report_to_json(const metrics::EvalReport& r) {
  ojson doc = ojson::object();
  doc["fde_deg"] = r.fde_deg;
  doc["ade_deg"] = r.ade_deg;
  doc["fde_m"] = r.fde_m;
  doc["ade_m"] = r.ade_m;
  doc["n_trajectories"] = r.n_trajectories;
  doc["n_points"] = r.n_points;
  doc["n_unparsable"] = r.n_unparsable;
  return doc.dump(2);
}

}  // namespace shiptraj::io
