// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include "shiptraj/error.hpp"
#include "shiptraj/io.hpp"

namespace shiptraj::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename T>
void take(const json& obj, const char* key, T& out) {
  const auto it = obj.find(key);
  if (it != obj.end() && !it->is_null()) out = it->get<T>();
}

const json& section(const json& doc, const char* key) {
  static const json empty = json::object();
  const auto it = doc.find(key);
  if (it == doc.end()) return empty;
  if (!it->is_object()) throw Error(Errc::kSchemaError, std::string("config section ") + key + " is not an object");
  return *it;
}

}  // namespace

ordered_json to_json(const RunConfig& c) {
  ordered_json doc;
  doc["region"] = c.region;
  doc["seed"] = c.seed;
  auto& data = doc["data"];
  data["t_obs"] = c.t_obs;
  data["t_pred"] = c.t_pred;
  data["stride"] = c.stride;
  data["interval_s"] = c.interval_s;
  data["max_gap_s"] = c.max_gap_s;
  if (c.bounds) {
    data["bounds"] = {{"lon_min", c.bounds->lon_min}, {"lon_max", c.bounds->lon_max},
                      {"lat_min", c.bounds->lat_min}, {"lat_max", c.bounds->lat_max}};
  } else {
    data["bounds"] = nullptr;
  }
  data["bounds_margin_deg"] = c.bounds_margin_deg;
  data["columns"] = {{"mmsi", c.columns.mmsi},       {"timestamp", c.columns.timestamp},
                     {"lon", c.columns.lon},         {"lat", c.columns.lat},
                     {"sog", c.columns.sog},         {"cog", c.columns.cog},
                     {"heading", c.columns.heading}, {"length", c.columns.length},
                     {"beam", c.columns.beam}};
  doc["qsd"] = {{"k", c.qsd.k},
                {"scale", c.qsd.scale},
                {"default_length_m", c.qsd.default_length_m},
                {"default_speed_kn", c.qsd.default_speed_kn}};
  doc["reward"] = {{"center_threshold_m", c.reward.center_threshold_m},
                   {"point_threshold_m", c.reward.point_threshold_m},
                   {"cot", c.reward.cot_required}};
  doc["prompt"] = {{"max_conflicts", c.max_conflicts}};
  doc["policy"] = {{"bins_per_axis", c.vocab.bins_per_axis}, {"max_step_deg", c.vocab.max_step_deg}};
  const auto& g = c.grpo;
  doc["grpo"] = {{"group_size", g.group_size},     {"clip_eps", g.clip_eps},
                 {"kl_coef", g.kl_coef},           {"learning_rate", g.learning_rate},
                 {"weight_decay", g.weight_decay}, {"batch_size", g.batch_size},
                 {"inner_epochs", g.inner_epochs}, {"std_floor", g.std_floor},
                 {"total_steps", g.total_steps},   {"checkpoint_every", g.checkpoint_every}};
  const auto& e = c.endpoint;
  doc["endpoint"] = {{"base_url", e.base_url},
                     {"model_name", e.model_name},
                     {"temperature", e.temperature},
                     {"max_tokens", e.max_tokens},
                     {"timeout_s", e.timeout_s},
                     {"max_retries", e.max_retries},
                     {"max_concurrency", e.max_concurrency},
                     {"auth_token_env", e.auth_token_env},
                     {"backoff_base_s", e.backoff_base_s}};
  return doc;
}

void merge_json(RunConfig& c, const json& doc) {
  if (!doc.is_object()) throw Error(Errc::kSchemaError, "config root must be an object");
  try {
    take(doc, "region", c.region);
    take(doc, "seed", c.seed);
    const auto& data = section(doc, "data");
    take(data, "t_obs", c.t_obs);
    take(data, "t_pred", c.t_pred);
    take(data, "stride", c.stride);
    take(data, "interval_s", c.interval_s);
    take(data, "max_gap_s", c.max_gap_s);
    take(data, "bounds_margin_deg", c.bounds_margin_deg);
    if (const auto it = data.find("bounds"); it != data.end() && it->is_object()) {
      geo::BoundingBox b;
      b.lon_min = it->at("lon_min").get<double>();
      b.lon_max = it->at("lon_max").get<double>();
      b.lat_min = it->at("lat_min").get<double>();
      b.lat_max = it->at("lat_max").get<double>();
      if (!b.valid()) throw Error(Errc::kSchemaError, "config bounds are empty or inverted");
      c.bounds = b;
    }
    const auto& cols = section(data, "columns");
    take(cols, "mmsi", c.columns.mmsi);
    take(cols, "timestamp", c.columns.timestamp);
    take(cols, "lon", c.columns.lon);
    take(cols, "lat", c.columns.lat);
    take(cols, "sog", c.columns.sog);
    take(cols, "cog", c.columns.cog);
    take(cols, "heading", c.columns.heading);
    take(cols, "length", c.columns.length);
    take(cols, "beam", c.columns.beam);

    const auto& qsd = section(doc, "qsd");
    take(qsd, "k", c.qsd.k);
    take(qsd, "scale", c.qsd.scale);
    take(qsd, "default_length_m", c.qsd.default_length_m);
    take(qsd, "default_speed_kn", c.qsd.default_speed_kn);

    const auto& rw = section(doc, "reward");
    take(rw, "center_threshold_m", c.reward.center_threshold_m);
    take(rw, "point_threshold_m", c.reward.point_threshold_m);
    take(rw, "cot", c.reward.cot_required);

    take(section(doc, "prompt"), "max_conflicts", c.max_conflicts);

    const auto& pol = section(doc, "policy");
    take(pol, "bins_per_axis", c.vocab.bins_per_axis);
    take(pol, "max_step_deg", c.vocab.max_step_deg);

    const auto& g = section(doc, "grpo");
    take(g, "group_size", c.grpo.group_size);
    take(g, "clip_eps", c.grpo.clip_eps);
    take(g, "kl_coef", c.grpo.kl_coef);
    take(g, "learning_rate", c.grpo.learning_rate);
    take(g, "weight_decay", c.grpo.weight_decay);
    take(g, "batch_size", c.grpo.batch_size);
    take(g, "inner_epochs", c.grpo.inner_epochs);
    take(g, "std_floor", c.grpo.std_floor);
    take(g, "total_steps", c.grpo.total_steps);
    take(g, "checkpoint_every", c.grpo.checkpoint_every);

    const auto& e = section(doc, "endpoint");
    take(e, "base_url", c.endpoint.base_url);
    take(e, "model_name", c.endpoint.model_name);
    take(e, "temperature", c.endpoint.temperature);
    take(e, "max_tokens", c.endpoint.max_tokens);
    take(e, "timeout_s", c.endpoint.timeout_s);
    take(e, "max_retries", c.endpoint.max_retries);
    take(e, "max_concurrency", c.endpoint.max_concurrency);
    take(e, "auth_token_env", c.endpoint.auth_token_env);
    take(e, "backoff_base_s", c.endpoint.backoff_base_s);
  } catch (const json::exception& ex) {
    throw Error(Errc::kSchemaError, std::string("config value has the wrong type: ") + ex.what());
  }
}

void merge_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const json doc = json::parse(buf.str(), nullptr, false);
  if (doc.is_discarded()) throw Error(Errc::kSchemaError, "config is not valid JSON: " + path.string());
  merge_json(cfg, doc);
}

void write_effective(const RunConfig& cfg, const std::filesystem::path& dir) {
  io::write_text(dir / "effective_config.json", to_json(cfg).dump(2) + "\n");
}

}  // namespace shiptraj::cli
