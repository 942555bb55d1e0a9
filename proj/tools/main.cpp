// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "run_config.hpp"
#include "shiptraj/ais_ingest.hpp"
#include "shiptraj/error.hpp"
#include "shiptraj/grpo.hpp"
#include "shiptraj/io.hpp"
#include "shiptraj/llm_client.hpp"
#include "shiptraj/metrics.hpp"
#include "shiptraj/policy.hpp"
#include "shiptraj/reward.hpp"
#include "shiptraj/synthetic.hpp"
#include "shiptraj/textio.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace shiptraj::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNetwork = 4;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kSchemaError:
    case Errc::kInvalidArgument:
    case Errc::kEmptyDataset:
      return kExitUsage;
    case Errc::kHttpError:
    case Errc::kTimeout:
    case Errc::kAuthMissing:
      return kExitNetwork;
    default:
      return kExitData;
  }
}

template <typename T>
void apply(std::optional<T>& flag, T& target) {
  if (flag) target = *flag;
}

// Flags shared by every subcommand that accepts a config file.
struct Common {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> region;

  void add(CLI::App* app) {
    app->add_option("--config", config, "JSON run configuration file");
    app->add_option("--seed", seed, "Random seed");
    app->add_option("--region", region, "Region name");
  }
  RunConfig resolve(const std::function<void(RunConfig&)>& overrides) const {
    RunConfig cfg;
    if (config) merge_file(cfg, *config);
    if (seed) cfg.seed = *seed;
    if (region) cfg.region = *region;
    overrides(cfg);
    return cfg;
  }
};

struct DataFlags {
  std::optional<std::size_t> t_obs, t_pred, stride;
  std::optional<double> interval, max_gap, scale;
  std::optional<int> k;

  void add(CLI::App* app) {
    app->add_option("--t-obs", t_obs, "Observed points per sample");
    app->add_option("--t-pred", t_pred, "Predicted points per sample");
    app->add_option("--stride", stride, "Window stride (0 = t_obs + t_pred)");
    app->add_option("--interval", interval, "Resampling interval in seconds");
    app->add_option("--max-gap", max_gap, "Split tracks at gaps above this many seconds");
    app->add_option("--qsd-k", k, "Ship domain shape exponent (1 or 2)");
    app->add_option("--qsd-scale", scale, "Ship domain radius scale factor");
  }
  void overlay(RunConfig& c) {
    apply(t_obs, c.t_obs);
    apply(t_pred, c.t_pred);
    apply(stride, c.stride);
    apply(interval, c.interval_s);
    apply(max_gap, c.max_gap_s);
    apply(k, c.qsd.k);
    apply(scale, c.qsd.scale);
  }
};

struct Prepared {
  ais::CsvParseResult parsed;
  std::vector<Trajectory> trajectories;
  std::size_t dropped_tracks = 0;
  std::vector<ais::PredictionSample> samples;
};

Prepared prepare(const RunConfig& cfg, const fs::path& input) {
  Prepared out;
  out.parsed = ais::parse_ais_csv(input, cfg.columns);
  for (const auto& track : ais::segment_tracks(out.parsed.records, cfg.max_gap_s)) {
    try {
      out.trajectories.push_back(ais::spline_resample(track, cfg.interval_s));
    } catch (const Error& e) {
      if (e.code() != Errc::kTooShort && e.code() != Errc::kDegenerateTime) throw;
      ++out.dropped_tracks;
    }
  }
  ais::SampleConfig sc;
  sc.t_obs = cfg.t_obs;
  sc.t_pred = cfg.t_pred;
  sc.stride = cfg.stride;
  sc.region = cfg.region;
  sc.domain = cfg.qsd;
  if (cfg.bounds) {
    sc.bounds = *cfg.bounds;
  } else {
    std::vector<geo::GeoPoint> all;
    for (const auto& t : out.trajectories) all.insert(all.end(), t.points.begin(), t.points.end());
    sc.bounds = all.empty() ? geo::BoundingBox{} : geo::extent(all, cfg.bounds_margin_deg);
  }
  out.samples = ais::build_samples(out.trajectories, sc);
  return out;
}

std::size_t uniform_t_pred(const std::vector<ais::PredictionSample>& samples) {
  if (samples.empty()) return 0;
  const std::size_t t = samples.front().future.size();
  for (const auto& s : samples) {
    if (s.future.size() != t) throw Error(Errc::kSchemaError, "samples mix different T_pred values");
  }
  return t;
}

std::map<std::string, const ais::PredictionSample*> index_samples(
    const std::vector<ais::PredictionSample>& samples) {
  std::map<std::string, const ais::PredictionSample*> by_id;
  for (const auto& s : samples) by_id.emplace(s.id, &s);
  return by_id;
}

std::string checkpoint_name(std::size_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%06zu.ckpt", step);
  return buf;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"shiptraj: AIS trajectory prediction with rule-based rewards and GRPO"};
  app.require_subcommand(1);

  // preprocess -----------------------------------------------------------
  Common pre_common;
  DataFlags pre_data;
  std::string pre_input, pre_out;
  auto* pre = app.add_subcommand("preprocess", "AIS CSV -> train/val/test sample files");
  pre_common.add(pre);
  pre_data.add(pre);
  pre->add_option("--input", pre_input, "AIS CSV file")->required();
  pre->add_option("--out-dir", pre_out, "Output directory")->required();

  // conflicts ------------------------------------------------------------
  Common con_common;
  DataFlags con_data;
  std::string con_input, con_out;
  auto* con = app.add_subcommand("conflicts", "Ship domain conflict report for every window");
  con_common.add(con);
  con_data.add(con);
  con->add_option("--input", con_input, "AIS CSV file")->required();
  con->add_option("--out", con_out, "Output JSON-lines (default stdout)");

  // prompts --------------------------------------------------------------
  Common pr_common;
  std::string pr_data, pr_out;
  bool pr_no_cot = false;
  std::optional<std::size_t> pr_max_conflicts;
  auto* pr = app.add_subcommand("prompts", "Render samples into chat prompts");
  pr_common.add(pr);
  pr->add_option("--data", pr_data, "Sample JSON-lines")->required();
  pr->add_option("--out", pr_out, "Prompt JSON-lines")->required();
  pr->add_flag("--no-cot", pr_no_cot, "Ask for the answer block only");
  pr->add_option("--max-conflicts", pr_max_conflicts, "Conflicting ships listed per prompt");

  // train ----------------------------------------------------------------
  Common tr_common;
  std::string tr_data, tr_out;
  std::optional<std::string> tr_init;
  std::optional<std::size_t> tr_steps, tr_group, tr_batch, tr_every, tr_epochs;
  std::optional<double> tr_lr, tr_beta, tr_eps, tr_wd;
  auto* tr = app.add_subcommand("train", "GRPO fine-tuning of the desk policy");
  tr_common.add(tr);
  tr->add_option("--train", tr_data, "Training sample JSON-lines")->required();
  tr->add_option("--out-dir", tr_out, "Output directory")->required();
  tr->add_option("--init", tr_init, "Initial checkpoint (default: zero weights)");
  tr->add_option("--steps", tr_steps, "Training steps");
  tr->add_option("--group-size", tr_group, "Completions per prompt (M)");
  tr->add_option("--batch-size", tr_batch, "Samples per step");
  tr->add_option("--inner-epochs", tr_epochs, "Updates per rollout batch");
  tr->add_option("--checkpoint-every", tr_every, "Checkpoint period in steps (0 = start/end only)");
  tr->add_option("--lr", tr_lr, "Learning rate");
  tr->add_option("--beta", tr_beta, "KL coefficient");
  tr->add_option("--clip-eps", tr_eps, "Ratio clipping radius");
  tr->add_option("--weight-decay", tr_wd, "Decoupled weight decay");

  // infer ----------------------------------------------------------------
  Common in_common;
  std::optional<std::string> in_prompts, in_data, in_ckpt, in_url, in_model, in_auth;
  std::optional<double> in_temp, in_timeout;
  std::optional<std::size_t> in_tokens, in_retries, in_conc;
  std::size_t in_samples = 1;
  bool in_greedy = false, in_no_cot = false;
  std::string in_out;
  auto* inf = app.add_subcommand("infer", "Collect completions from an endpoint or a desk checkpoint");
  in_common.add(inf);
  inf->add_option("--prompts", in_prompts, "Prompt JSON-lines (endpoint mode)");
  inf->add_option("--data", in_data, "Sample JSON-lines (rendered on the fly, or desk mode)");
  inf->add_option("--checkpoint", in_ckpt, "Desk policy checkpoint instead of an endpoint");
  inf->add_option("--samples", in_samples, "Desk mode: completions per sample");
  inf->add_flag("--greedy", in_greedy, "Desk mode: most probable action per step");
  inf->add_flag("--no-cot", in_no_cot, "Prompts/answers without the think block");
  inf->add_option("--base-url", in_url, "Chat-completions base URL, e.g. http://host:8000/v1");
  inf->add_option("--model", in_model, "Model name");
  inf->add_option("--temperature", in_temp, "Sampling temperature");
  inf->add_option("--max-tokens", in_tokens, "Completion token limit");
  inf->add_option("--timeout", in_timeout, "Request timeout in seconds");
  inf->add_option("--retries", in_retries, "Retries for transient failures");
  inf->add_option("--concurrency", in_conc, "Maximum in-flight requests");
  inf->add_option("--auth-env", in_auth, "Environment variable holding the bearer token");
  inf->add_option("--out", in_out, "Completions JSON-lines")->required();

  // score ----------------------------------------------------------------
  Common sc_common;
  std::string sc_data, sc_comp;
  std::optional<std::string> sc_out;
  bool sc_no_cot = false;
  auto* sc = app.add_subcommand("score", "Rule-based rewards for every completion");
  sc_common.add(sc);
  sc->add_option("--data", sc_data, "Sample JSON-lines")->required();
  sc->add_option("--completions", sc_comp, "Completions JSON-lines")->required();
  sc->add_option("--out", sc_out, "Score report JSON-lines (default stdout)");
  sc->add_flag("--no-cot", sc_no_cot, "Do not require the think block");

  // eval -----------------------------------------------------------------
  Common ev_common;
  std::string ev_data, ev_comp, ev_strategy = "exclude";
  std::optional<std::string> ev_out, ev_csv;
  bool ev_no_cot = false;
  auto* ev = app.add_subcommand("eval", "FDE/ADE of completions against ground truth");
  ev_common.add(ev);
  ev->add_option("--data", ev_data, "Sample JSON-lines")->required();
  ev->add_option("--completions", ev_comp, "Completions JSON-lines")->required();
  ev->add_option("--strategy", ev_strategy, "Unparsable outputs: exclude | substitute")
      ->check(CLI::IsMember({"exclude", "substitute"}));
  ev->add_option("--out", ev_out, "Report JSON (default stdout)");
  ev->add_option("--errors-csv", ev_csv, "Per-point error CSV");
  ev->add_flag("--no-cot", ev_no_cot, "Do not require the think block");

  // export-plot ----------------------------------------------------------
  std::string ex_data, ex_comp, ex_out;
  bool ex_no_cot = false;
  auto* ex = app.add_subcommand("export-plot", "Long-format CSV of observed, true and predicted tracks");
  ex->add_option("--data", ex_data, "Sample JSON-lines")->required();
  ex->add_option("--completions", ex_comp, "Completions JSON-lines")->required();
  ex->add_option("--out", ex_out, "CSV output")->required();
  ex->add_flag("--no-cot", ex_no_cot, "Do not require the think block");

  // synth ----------------------------------------------------------------
  synth::FleetConfig fleet;
  double sy_jitter = 0.0;
  std::string sy_out;
  auto* sy = app.add_subcommand("synth", "Write a synthetic constant-velocity AIS CSV");
  sy->add_option("--out", sy_out, "CSV output")->required();
  sy->add_option("--vessels", fleet.vessels, "Number of vessels");
  sy->add_option("--points", fleet.points, "Fixes per vessel");
  sy->add_option("--seed", fleet.seed, "Random seed");
  sy->add_option("--jitter", sy_jitter, "Uniform timestamp noise in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*pre) {
      const RunConfig cfg = pre_common.resolve([&](RunConfig& c) { pre_data.overlay(c); });
      const auto prep = prepare(cfg, pre_input);
      const auto split = ais::split_dataset(prep.samples, cfg.seed);
      const fs::path dir(pre_out);
      io::write_samples(dir / "train.jsonl", split.train);
      io::write_samples(dir / "val.jsonl", split.val);
      io::write_samples(dir / "test.jsonl", split.test);
      std::size_t n_points = 0;
      for (const auto& t : prep.trajectories) n_points += t.size();
      ordered_json manifest;
      manifest["region"] = cfg.region;
      manifest["seed"] = cfg.seed;
      manifest["t_obs"] = cfg.t_obs;
      manifest["t_pred"] = cfg.t_pred;
      manifest["n_records"] = prep.parsed.records.size();
      manifest["n_skipped_rows"] = prep.parsed.skipped;
      manifest["n_trajectories"] = prep.trajectories.size();
      manifest["n_points"] = n_points;
      manifest["n_samples"] = prep.samples.size();
      auto add_split = [&](const char* name, const auto& samples, const auto& sources) {
        manifest["splits"][name] = {{"file", std::string(name) + ".jsonl"},
                                    {"n_samples", samples.size()},
                                    {"trajectories", sources}};
      };
      add_split("train", split.train, split.train_sources);
      add_split("val", split.val, split.val_sources);
      add_split("test", split.test, split.test_sources);
      io::write_text(dir / "manifest.json", manifest.dump(2) + "\n");
      write_effective(cfg, dir);
      std::printf("records %zu (skipped %zu), trajectories %zu, points %zu, samples %zu "
                  "(train %zu / val %zu / test %zu)\n",
                  prep.parsed.records.size(), prep.parsed.skipped, prep.trajectories.size(),
                  n_points, prep.samples.size(), split.train.size(), split.val.size(),
                  split.test.size());
      return kExitOk;
    }

    if (*con) {
      const RunConfig cfg = con_common.resolve([&](RunConfig& c) { con_data.overlay(c); });
      const auto prep = prepare(cfg, con_input);
      std::string text;
      std::size_t n_pairs = 0, n_windows = 0;
      for (const auto& s : prep.samples) {
        if (!s.conflicts.empty()) ++n_windows;
        for (const auto& c : s.conflicts) {
          ++n_pairs;
          ordered_json line;
          line["sample_id"] = s.id;
          line["target_mmsi"] = s.mmsi;
          line["neighbor_mmsi"] = c.mmsi;
          line["intruded_steps"] = c.intruded_steps;
          line["min_f"] = c.min_f;
          text += line.dump() + "\n";
        }
      }
      if (con_out.empty()) {
        std::fputs(text.c_str(), stdout);
      } else {
        io::write_text(con_out, text);
      }
      std::fprintf(stderr, "conflicts %zu in %zu of %zu windows\n", n_pairs, n_windows, prep.samples.size());
      return kExitOk;
    }

    if (*pr) {
      const RunConfig cfg = pr_common.resolve([&](RunConfig& c) { apply(pr_max_conflicts, c.max_conflicts); });
      const auto samples = io::read_samples(pr_data);
      textio::PromptOptions opts{!pr_no_cot && cfg.reward.cot_required, cfg.max_conflicts};
      std::string text;
      for (const auto& s : samples) {
        text += io::prompt_to_json(s.id, textio::build_prompt(s, s.future.size(), opts), s.future.size()) + "\n";
      }
      io::write_text(pr_out, text);
      std::printf("prompts %zu\n", samples.size());
      return kExitOk;
    }

    if (*tr) {
      const RunConfig cfg = tr_common.resolve([&](RunConfig& c) {
        apply(tr_steps, c.grpo.total_steps);
        apply(tr_group, c.grpo.group_size);
        apply(tr_batch, c.grpo.batch_size);
        apply(tr_epochs, c.grpo.inner_epochs);
        apply(tr_every, c.grpo.checkpoint_every);
        apply(tr_lr, c.grpo.learning_rate);
        apply(tr_beta, c.grpo.kl_coef);
        apply(tr_eps, c.grpo.clip_eps);
        apply(tr_wd, c.grpo.weight_decay);
      });
      const auto samples = io::read_samples(tr_data);
      if (samples.empty()) throw Error(Errc::kEmptyDataset, "no samples in " + tr_data);
      grpo::GrpoConfig gcfg = cfg.grpo;
      gcfg.seed = cfg.seed;
      gcfg.t_pred = uniform_t_pred(samples);

      policy::PolicyParams init;
      policy::ActionVocab vocab = cfg.vocab;
      if (tr_init) {
        auto ckpt = policy::load_checkpoint(*tr_init);
        vocab = ckpt.vocab;
        init = std::move(ckpt.params);
      }
      const policy::DeskPolicy desk(vocab, cfg.reward.cot_required);
      if (!tr_init) init = desk.initial_params();

      const fs::path dir(tr_out);
      fs::create_directories(dir / "checkpoints");
      write_effective(cfg, dir);
      std::ofstream log_out(dir / "train_log.jsonl", std::ios::binary);
      if (!log_out) throw Error(Errc::kIoError, "cannot write training log");

      grpo::TrainCallbacks cb;
      cb.on_step = [&](const grpo::StepLog& l) { log_out << io::step_log_to_json(l) << '\n'; };
      cb.on_checkpoint = [&](std::size_t step, const policy::PolicyParams& p) {
        policy::save_checkpoint(dir / "checkpoints" / checkpoint_name(step), {vocab, p});
      };
      // Always checkpoint the start and the end.
      if (gcfg.checkpoint_every == 0) gcfg.checkpoint_every = std::max<std::size_t>(gcfg.total_steps, 1);
      const auto result = grpo::train_from(init, samples, desk, cfg.reward, gcfg, cb);
      policy::save_checkpoint(dir / "final.ckpt", {vocab, result.state.current});
      const double final_reward = result.log.empty() ? 0.0 : result.log.back().mean_reward;
      const double final_kl = result.log.empty() ? 0.0 : result.log.back().mean_kl;
      std::printf("steps %zu, final mean reward %.6f, final mean KL %.9g\n", result.log.size(),
                  final_reward, final_kl);
      return kExitOk;
    }

    if (*inf) {
      const RunConfig cfg = in_common.resolve([&](RunConfig& c) {
        apply(in_url, c.endpoint.base_url);
        apply(in_model, c.endpoint.model_name);
        apply(in_temp, c.endpoint.temperature);
        apply(in_tokens, c.endpoint.max_tokens);
        apply(in_timeout, c.endpoint.timeout_s);
        apply(in_retries, c.endpoint.max_retries);
        apply(in_conc, c.endpoint.max_concurrency);
        apply(in_auth, c.endpoint.auth_token_env);
        if (in_no_cot) c.reward.cot_required = false;
      });
      if (in_ckpt) {
        if (!in_data) throw Error(Errc::kInvalidArgument, "--checkpoint needs --data");
        const auto ckpt = policy::load_checkpoint(*in_ckpt);
        const policy::DeskPolicy desk(ckpt.vocab, cfg.reward.cot_required);
        std::vector<llm::CompletionRecord> records;
        for (std::size_t i = 0; const auto& s : io::read_samples(*in_data)) {
          for (std::size_t k = 0; k < in_samples; ++k, ++i) {
            const auto c = in_greedy ? desk.greedy_completion(ckpt.params, s, s.future.size())
                                     : desk.sample_completion(ckpt.params, s, s.future.size(),
                                                              policy::mix_seed(cfg.seed, i));
            records.push_back({s.id, c.text, 0.0, "ok", ""});
          }
        }
        io::write_completions(in_out, records);
        std::printf("completions %zu\n", records.size());
        return kExitOk;
      }

      llm::PromptBatch batch;
      if (in_prompts) {
        for (auto& p : io::read_prompts(*in_prompts)) batch.emplace_back(p.sample_id, std::move(p.prompt));
      } else if (in_data) {
        const textio::PromptOptions opts{cfg.reward.cot_required, cfg.max_conflicts};
        for (const auto& s : io::read_samples(*in_data)) {
          batch.emplace_back(s.id, textio::build_prompt(s, s.future.size(), opts));
        }
      } else {
        throw Error(Errc::kInvalidArgument, "infer needs --prompts, --data or --checkpoint");
      }
      const auto records = llm::batch_infer_to_file(cfg.endpoint, batch, in_out);
      std::size_t failed = 0;
      for (const auto& r : records) failed += r.status != "ok";
      std::printf("completions %zu, failed %zu\n", records.size(), failed);
      if (failed > 0) {
        std::fprintf(stderr, "warning: %zu request(s) failed; see status fields in %s\n", failed,
                     in_out.c_str());
      }
      return failed > 0 && failed == records.size() ? kExitNetwork : kExitOk;
    }

    if (*sc) {
      RunConfig cfg = sc_common.resolve([&](RunConfig& c) { if (sc_no_cot) c.reward.cot_required = false; });
      const auto samples = io::read_samples(sc_data);
      const auto by_id = index_samples(samples);
      std::map<std::string, std::size_t> seen;
      std::string text;
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& rec : io::read_completions(sc_comp)) {
        const auto it = by_id.find(rec.sample_id);
        if (it == by_id.end()) throw Error(Errc::kUnknownSampleId, rec.sample_id);
        const std::string body = rec.status == "ok" ? rec.text : std::string();
        const auto b = reward::total_reward(body, *it->second, cfg.reward);
        text += io::score_to_json(rec.sample_id, seen[rec.sample_id]++, b) + "\n";
        sum += b.total;
        ++n;
      }
      if (sc_out) {
        io::write_text(*sc_out, text);
      } else {
        std::fputs(text.c_str(), stdout);
      }
      std::fprintf(stderr, "scored %zu completions, mean total %.6f\n", n, n ? sum / static_cast<double>(n) : 0.0);
      return kExitOk;
    }

    if (*ev) {
      RunConfig cfg = ev_common.resolve([&](RunConfig& c) { if (ev_no_cot) c.reward.cot_required = false; });
      const auto samples = io::read_samples(ev_data);
      std::vector<metrics::ModelOutput> outputs;
      for (const auto& rec : io::read_completions(ev_comp)) {
        outputs.push_back({rec.sample_id, rec.status == "ok" ? rec.text : std::string()});
      }
      const auto strategy = ev_strategy == "substitute" ? metrics::UnparsableStrategy::kSubstituteLastObserved
                                                        : metrics::UnparsableStrategy::kExclude;
      const auto result = metrics::evaluate_completions(outputs, samples, cfg.reward.cot_required, strategy);
      const std::string report = io::eval_report_to_json(result.report) + "\n";
      if (ev_out) {
        io::write_text(*ev_out, report);
      } else {
        std::fputs(report.c_str(), stdout);
      }
      if (ev_csv) {
        std::ostringstream csv;
        metrics::write_errors_csv(csv, result.errors);
        io::write_text(*ev_csv, csv.str());
      }
      return kExitOk;
    }

    if (*ex) {
      const bool cot = !ex_no_cot;
      const auto samples = io::read_samples(ex_data);
      const auto by_id = index_samples(samples);
      std::string csv = "sample_id,series,step,lon,lat\n";
      auto row = [&](const std::string& id, const char* series, long step, const geo::GeoPoint& p) {
        csv += id + "," + series + "," + std::to_string(step) + "," + textio::format_coord(p.lon) +
               "," + textio::format_coord(p.lat) + "\n";
      };
      for (const auto& rec : io::read_completions(ex_comp)) {
        const auto it = by_id.find(rec.sample_id);
        if (it == by_id.end()) throw Error(Errc::kUnknownSampleId, rec.sample_id);
        const auto& s = *it->second;
        const long n_obs = static_cast<long>(s.observed.size());
        for (long i = 0; i < n_obs; ++i) row(s.id, "obs", i - (n_obs - 1), s.observed[static_cast<std::size_t>(i)]);
        for (std::size_t t = 0; t < s.future.size(); ++t) row(s.id, "truth", static_cast<long>(t + 1), s.future[t]);
        if (rec.status != "ok") continue;
        const auto parsed = textio::parse_output(rec.text, s.future.size(), cot);
        if (!parsed) continue;
        const auto& pred = parsed.value().trajectory;
        for (std::size_t t = 0; t < pred.size(); ++t) row(s.id, "pred", static_cast<long>(t + 1), pred[t]);
      }
      io::write_text(ex_out, csv);
      return kExitOk;
    }

    if (*sy) {
      io::write_text(sy_out, synth::records_to_csv(synth::constant_velocity_records(fleet, sy_jitter)));
      return kExitOk;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace shiptraj::cli

int main(int argc, char** argv) { return shiptraj::cli::run(argc, argv); }
