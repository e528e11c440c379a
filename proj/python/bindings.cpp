#include <map>
#include <optional>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "dtrust/analysis.hpp"
#include "dtrust/error.hpp"
#include "dtrust/experiments.hpp"
#include "dtrust/graph.hpp"
#include "dtrust/protocol.hpp"

namespace py = pybind11;
namespace ex = dtrust::experiments;
namespace gr = dtrust::graph;
namespace an = dtrust::analysis;

namespace {

// preset, then config text, then per-key overrides.
ex::ExperimentConfig resolve(const std::string& preset, const std::string& text,
                             const std::map<std::string, std::string>& overrides) {
  ex::ExperimentConfig cfg = preset.empty() ? ex::ExperimentConfig{} : ex::preset(preset);
  if (!text.empty()) cfg = ex::parse_config(text, cfg);
  for (const auto& [k, v] : overrides) ex::apply_setting(cfg, k, v);
  return cfg;
}

std::vector<std::string> role_names(const gr::NetworkInstance& inst) {
  std::vector<std::string> out;
  for (auto r : inst.roles()) out.emplace_back(gr::to_string(r));
  return out;
}

py::dict trace_dict(const ex::ExperimentConfig& cfg, const ex::TrialRecord& rec) {
  py::dict d;
  d["summary"] = ex::trial_summary_json(cfg, rec).dump();
  d["mse"] = rec.trace.mse;
  d["max_err"] = rec.trace.max_error;
  d["min_err"] = rec.trace.min_error;
  d["csv"] = ex::trace_csv(rec.trace);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trust-aware opinion dynamics: graphs, simulation and analysis.";

  auto base = py::register_exception<dtrust::Error>(m, "DtrustError", PyExc_RuntimeError);
  py::register_exception<dtrust::ConfigRejected>(m, "ConfigRejected", base.ptr());
  py::register_exception<dtrust::ParseError>(m, "ParseError", base.ptr());

  py::class_<gr::NetworkInstance>(m, "Instance")
      .def_property_readonly("node_count", &gr::NetworkInstance::node_count)
      .def_property_readonly("roles", &role_names)
      .def_property_readonly("legitimate", &gr::NetworkInstance::legitimate)
      .def_property_readonly("malicious", &gr::NetworkInstance::malicious)
      .def_property_readonly("edges", [](const gr::NetworkInstance& i) { return i.graph().edges(); })
      .def("in_neighbors",
           [](const gr::NetworkInstance& i, gr::NodeId v) {
             auto s = i.graph().in_neighbors(v);
             return std::vector<gr::NodeId>(s.begin(), s.end());
           })
      .def("to_edge_list", &gr::to_edge_list)
      .def("save", [](const gr::NetworkInstance& i, const std::string& path) { gr::save_edge_list(path, i); })
      .def_static("parse", &gr::parse_edge_list, py::arg("text"))
      .def_static("load", &gr::load_edge_list, py::arg("path"))
      .def("__eq__", [](const gr::NetworkInstance& a, const gr::NetworkInstance& b) { return a == b; })
      .def("__repr__", [](const gr::NetworkInstance& i) {
        return "<Instance legit=" + std::to_string(i.legitimate().size()) +
               " malicious=" + std::to_string(i.malicious().size()) +
               " edges=" + std::to_string(i.graph().edge_count()) + ">";
      });

  m.def("preset_names", &ex::preset_names);
  m.def("config_keys", &ex::config_keys);
  m.def(
      "resolve_config",
      [](const std::string& preset, const std::string& text, const std::map<std::string, std::string>& ov) {
        const auto cfg = resolve(preset, text, ov);
        cfg.validate();
        return ex::to_config_text(cfg);
      },
      py::arg("preset") = "", py::arg("config_text") = "", py::arg("overrides") = std::map<std::string, std::string>{});
  m.def("variant_labels", [](const std::string& text) {
    std::vector<std::string> out;
    for (const auto& [label, c] : ex::expand(ex::parse_config(text))) out.push_back(label);
    return out;
  });

  m.def("fixture", &gr::assumption_violation_fixture);
  m.def(
      "make_instance",
      [](const std::string& text, const std::string& variant, std::size_t trial) {
        for (auto& [label, c] : ex::expand(ex::parse_config(text))) {
          if (label == variant) return ex::make_instance(c, trial);
        }
        throw dtrust::ConfigRejected("unknown variant '" + variant + "'");
      },
      py::arg("config_text"), py::arg("variant") = "", py::arg("trial") = 0);

  m.def("verify", [](const gr::NetworkInstance& inst) {
    return ex::assumption_json(gr::verify_assumptions(inst)).dump();
  });
  m.def(
      "analyze",
      [](const gr::NetworkInstance& inst, bool full_diameter) {
        const auto scope = full_diameter ? an::DiameterScope::FullGraph : an::DiameterScope::LegitimateSubgraph;
        return ex::analysis_json(inst, an::analyze_instance(inst, scope)).dump();
      },
      py::arg("instance"), py::arg("full_diameter") = false);

  m.def(
      "run_trial",
      [](const std::string& text, const std::string& variant, std::size_t trial) {
        for (auto& [label, c] : ex::expand(ex::parse_config(text))) {
          if (label != variant) continue;
          c.validate();
          ex::TrialRecord rec;
          {
            py::gil_scoped_release release;
            const auto spec = ex::make_trial_spec(c, trial);
            rec.index = trial;
            rec.seed = spec.seed;
            rec.n_legit = spec.instance.legitimate().size();
            rec.n_malicious = spec.instance.malicious().size();
            rec.trace = dtrust::protocol::run_trial(spec);
          }
          return trace_dict(c, rec);
        }
        throw dtrust::ConfigRejected("unknown variant '" + variant + "'");
      },
      py::arg("config_text"), py::arg("variant") = "", py::arg("trial") = 0);

  m.def(
      "run_experiment",
      [](const std::string& text, bool write_files, std::size_t threads) {
        const auto cfg = ex::parse_config(text);
        ex::RunOptions opts;
        opts.write_files = write_files;
        opts.threads = threads;
        std::vector<ex::ExperimentResult> results;
        {
          py::gil_scoped_release release;
          results = ex::run_all(cfg, opts);
        }
        const auto labels = ex::expand(cfg);
        nlohmann::json out = nlohmann::json::array();
        for (std::size_t k = 0; k < results.size(); ++k) {
          const auto& r = results[k];
          nlohmann::json trials = nlohmann::json::array();
          for (const auto& t : r.trials) trials.push_back(ex::trial_summary_json(r.config, t));
          out.push_back({{"variant", labels[k].first},
                         {"aggregate", ex::aggregate_json(r.config, r.stats, r.trials)},
                         {"trials", trials}});
        }
        return out.dump();
      },
      py::arg("config_text"), py::arg("write_files") = true, py::arg("threads") = 0);

  m.def("index_of_contraction", [](const an::Matrix& w) { return an::index_of_contraction(w).value; });
  m.def("is_weakly_chained", &an::is_weakly_chained);
  m.def("matrix_power", &an::matrix_power);
}
