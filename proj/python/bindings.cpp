// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "shiptraj/error.hpp"
#include "shiptraj/geo.hpp"
#include "shiptraj/grpo.hpp"
#include "shiptraj/io.hpp"
#include "shiptraj/metrics.hpp"
#include "shiptraj/policy.hpp"
#include "shiptraj/reward.hpp"
#include "shiptraj/ship_domain.hpp"
#include "shiptraj/synthetic.hpp"
#include "shiptraj/textio.hpp"

namespace py = pybind11;
namespace st = shiptraj;

using st::geo::GeoPoint;

namespace {

using PointTuple = std::pair<double, double>;

GeoPoint to_point(const PointTuple& p) { return {p.first, p.second}; }

std::vector<GeoPoint> to_points(const std::vector<PointTuple>& v) {
  std::vector<GeoPoint> out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(to_point(p));
  return out;
}

std::vector<PointTuple> from_points(const std::vector<GeoPoint>& v) {
  std::vector<PointTuple> out;
  out.reserve(v.size());
  for (const auto& p : v) out.emplace_back(p.lon, p.lat);
  return out;
}

st::metrics::TrajectoryList to_list(const std::vector<std::vector<PointTuple>>& v) {
  st::metrics::TrajectoryList out;
  for (const auto& t : v) out.push_back(to_points(t));
  return out;
}

}  // namespace

PYBIND11_MODULE(_shiptraj, m) {
  m.doc() = "Ship trajectory prediction core: geodesy, ship domains, rewards and GRPO.";

  static py::exception<st::Error> error(m, "ShiptrajError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const st::Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(st::errc_name(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("vincenty_distance",
        [](PointTuple a, PointTuple b) { return st::geo::vincenty_distance(to_point(a), to_point(b)); },
        py::arg("a"), py::arg("b"), "WGS84 inverse distance in meters between (lon, lat) pairs.");

  py::class_<st::domain::QsdParams>(m, "QsdParams")
      .def_readonly("r_fore", &st::domain::QsdParams::r_fore)
      .def_readonly("r_aft", &st::domain::QsdParams::r_aft)
      .def_readonly("r_starb", &st::domain::QsdParams::r_starb)
      .def_readonly("r_port", &st::domain::QsdParams::r_port)
      .def_readonly("k", &st::domain::QsdParams::k);
  m.def("qsd_radii", &st::domain::qsd_radii, py::arg("length_m"), py::arg("speed_kn"), py::arg("k") = 2);
  m.def(
      "qsd_contains",
      [](const st::domain::QsdParams& q, double x, double y) {
        const auto r = st::domain::qsd_contains(q, {x, y});
        return py::make_tuple(r.inside, r.f);
      },
      py::arg("params"), py::arg("x"), py::arg("y"), "Returns (inside, f) for a point ahead x, starboard y.");

  py::class_<st::ais::PredictionSample>(m, "PredictionSample")
      .def_readonly("id", &st::ais::PredictionSample::id)
      .def_readonly("region", &st::ais::PredictionSample::region)
      .def_readonly("mmsi", &st::ais::PredictionSample::mmsi)
      .def_readonly("t0", &st::ais::PredictionSample::t0)
      .def_property_readonly("observed", [](const st::ais::PredictionSample& s) { return from_points(s.observed); })
      .def_property_readonly("future", [](const st::ais::PredictionSample& s) { return from_points(s.future); })
      .def_property_readonly("n_conflicts", [](const st::ais::PredictionSample& s) { return s.conflicts.size(); });
  m.def("read_samples", &st::io::read_samples, py::arg("path"));

  m.def(
      "build_prompt",
      [](const st::ais::PredictionSample& s, std::size_t t_pred, bool cot) {
        st::textio::PromptOptions opts;
        opts.cot = cot;
        const auto p = st::textio::build_prompt(s, t_pred, opts);
        return py::make_tuple(p.system, p.user);
      },
      py::arg("sample"), py::arg("t_pred") = 4, py::arg("cot") = true, "Returns (system, user).");
  m.def(
      "parse_output",
      [](const std::string& text, std::size_t t_pred, bool cot) -> py::object {
        auto out = st::textio::parse_output(text, t_pred, cot);
        if (!out) return py::str(std::string(st::textio::parse_cause_name(out.failure().cause)));
        return py::cast(from_points(out.value().trajectory));
      },
      py::arg("text"), py::arg("t_pred"), py::arg("cot") = true,
      "List of (lon, lat) on success, otherwise the failure cause name.");
  m.def(
      "render_answer",
      [](const std::vector<PointTuple>& traj, const std::string& think, bool cot) {
        return st::textio::render_answer(to_points(traj), think, cot);
      },
      py::arg("trajectory"), py::arg("think") = "", py::arg("cot") = true);

  m.def(
      "total_reward",
      [](const std::string& text, const st::ais::PredictionSample& s, bool cot) {
        st::reward::RewardConfig cfg;
        cfg.cot_required = cot;
        const auto r = st::reward::total_reward(text, s, cfg);
        py::dict d;
        d["format"] = r.format;
        d["center"] = r.center;
        d["points"] = r.points;
        d["total"] = r.total;
        return d;
      },
      py::arg("text"), py::arg("sample"), py::arg("cot") = true);

  m.def(
      "group_advantages",
      [](const std::vector<double>& r, double floor) { return st::grpo::group_advantages(r, floor); }, py::arg("rewards"), py::arg("std_floor") = 1e-8);
  m.def("kl_estimate", &st::grpo::kl_estimate, py::arg("logp_current"), py::arg("logp_reference"));
  m.def("clipped_surrogate", &st::grpo::clipped_surrogate, py::arg("ratio"), py::arg("advantage"),
        py::arg("clip_eps") = 0.2);

  m.def("fde", [](const std::vector<std::vector<PointTuple>>& p, const std::vector<std::vector<PointTuple>>& t) {
    return st::metrics::fde(to_list(p), to_list(t));
  });
  m.def("ade", [](const std::vector<std::vector<PointTuple>>& p, const std::vector<std::vector<PointTuple>>& t) {
    return st::metrics::ade(to_list(p), to_list(t));
  });

  m.def(
      "synthetic_fleet_samples",
      [](std::size_t vessels, std::size_t points, std::uint64_t seed) {
        st::synth::FleetConfig fc;
        fc.vessels = vessels;
        fc.points = points;
        fc.seed = seed;
        return st::ais::build_samples(st::synth::constant_velocity_fleet(fc), st::ais::SampleConfig{});
      },
      py::arg("vessels") = 20, py::arg("points") = 12, py::arg("seed") = 7,
      "Prediction samples cut from a constant-velocity synthetic fleet.");

  py::class_<st::policy::PolicyParams>(m, "PolicyParams")
      .def("__eq__", [](const st::policy::PolicyParams& a, const st::policy::PolicyParams& b) { return a == b; })
      .def_property_readonly("shape", [](const st::policy::PolicyParams& p) {
        return py::make_tuple(p.weights.rows, p.weights.cols);
      });

  py::class_<st::policy::DeskPolicy>(m, "DeskPolicy")
      .def(py::init([](bool cot) { return st::policy::DeskPolicy({}, cot); }), py::arg("cot") = true)
      .def("initial_params", &st::policy::DeskPolicy::initial_params)
      .def(
          "sample",
          [](const st::policy::DeskPolicy& p, const st::policy::PolicyParams& params,
             const st::ais::PredictionSample& s, std::size_t t_pred, std::uint64_t seed) {
            return p.sample_completion(params, s, t_pred, seed).text;
          },
          py::arg("params"), py::arg("sample"), py::arg("t_pred") = 4, py::arg("seed") = 0)
      .def(
          "greedy",
          [](const st::policy::DeskPolicy& p, const st::policy::PolicyParams& params,
             const st::ais::PredictionSample& s, std::size_t t_pred) {
            return p.greedy_completion(params, s, t_pred).text;
          },
          py::arg("params"), py::arg("sample"), py::arg("t_pred") = 4);

  m.def(
      "train",
      [](const std::vector<st::ais::PredictionSample>& samples, std::size_t steps, std::uint64_t seed,
         double lr, double beta, std::size_t group_size, std::size_t batch_size) {
        st::grpo::GrpoConfig cfg;
        cfg.total_steps = steps;
        cfg.seed = seed;
        cfg.learning_rate = lr;
        cfg.kl_coef = beta;
        cfg.group_size = group_size;
        cfg.batch_size = batch_size;
        st::policy::DeskPolicy policy;
        st::reward::RewardConfig rcfg;
        auto result = [&] {
          py::gil_scoped_release release;
          return st::grpo::train(samples, policy, rcfg, cfg);
        }();
        py::list log;
        for (const auto& s : result.log) {
          py::dict d;
          d["step"] = s.step;
          d["mean_reward"] = s.mean_reward;
          d["mean_kl"] = s.mean_kl;
          d["clip_fraction"] = s.clip_fraction;
          d["objective"] = s.objective;
          log.append(d);
        }
        return py::make_tuple(result.state.current, log);
      },
      py::arg("samples"), py::arg("steps") = 200, py::arg("seed") = 0,
      py::arg("lr") = st::grpo::kDeskLearningRate, py::arg("beta") = 1e-4, py::arg("group_size") = 8,
      py::arg("batch_size") = 16, "Runs GRPO with the desk policy. Returns (params, log).");
}
