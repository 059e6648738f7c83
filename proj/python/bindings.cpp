// Copyright 2026 The byzest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "byzest/aggregation.hpp"
#include "byzest/analysis.hpp"
#include "byzest/config.hpp"
#include "byzest/engine.hpp"
#include "byzest/topology.hpp"

namespace py = pybind11;
using namespace byzest;

namespace {

std::vector<ObservationModel> models_from(const std::vector<std::vector<std::vector<double>>>& hs) {
    std::vector<ObservationModel> models;
    for (std::size_t j = 0; j < hs.size(); ++j) {
        const auto& rows = hs[j];
        if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty H");
        Mat h(rows.size(), rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != h.cols()) throw std::invalid_argument("ragged H");
            for (std::size_t c = 0; c < h.cols(); ++c) h(r, c) = rows[r][c];
        }
        models.emplace_back(j, std::move(h), NoiseSpec::zero(rows.size()));
    }
    return models;
}

ConfigFile config_from(const std::string& text, const std::string& base_dir) {
    std::istringstream in(text);
    return parse_config(in, base_dir);
}

py::dict trace_dict(const SimulationTrace& t) {
    std::vector<std::size_t> round;
    std::vector<double> mean_l2, max_linf, envelope;
    for (const auto& r : t.rows) {
        round.push_back(r.round);
        mean_l2.push_back(r.error_mean_l2);
        max_linf.push_back(r.error_max_linf);
        envelope.push_back(r.envelope);
    }
    py::dict d;
    d["label"] = t.label;
    d["seed"] = t.seed;
    d["good_ids"] = t.good_ids;
    d["theta_star"] = t.theta_star.values();
    d["round"] = round;
    d["error_mean_l2"] = mean_l2;
    d["error_max_linf"] = max_linf;
    d["envelope"] = envelope;
    d["diverged"] = t.diverged;
    return d;
}

}  // namespace

PYBIND11_MODULE(_byzest, m) {
    m.doc() = "Byzantine-resilient distributed estimation";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<AggregationUnderflow>(m, "AggregationUnderflow", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<MultipleSourceComponents>(m, "MultipleSourceComponents",
                                                     PyExc_RuntimeError);

    m.def(
        "trimmed_mean",
        [](const std::vector<double>& values, std::size_t b) {
            std::vector<std::pair<NodeId, double>> labelled;
            for (std::size_t i = 0; i < values.size(); ++i) labelled.emplace_back(i, values[i]);
            const auto r = trimmed_mean_scalar(labelled, b);
            return py::make_tuple(r.value, r.surviving);
        },
        py::arg("values"), py::arg("b"),
        "Mean after dropping b values from each end. Returns (mean, surviving indices).");

    m.def(
        "trimmed_aggregate",
        [](const std::vector<std::vector<double>>& vectors, std::size_t b) {
            MessageSet msgs;
            for (std::size_t i = 0; i < vectors.size(); ++i) msgs.push_back({i, Vec(vectors[i])});
            return coordinate_trimmed_aggregate(msgs, b).values();
        },
        py::arg("vectors"), py::arg("b"), "Coordinate-wise trimmed mean of equal-length vectors.");

    m.def(
        "feasible",
        [](const std::vector<double>& good, double aggregate, std::size_t b) {
            return lemma1_feasibility_oracle(good, aggregate, b);
        },
        py::arg("good_values"), py::arg("aggregate"), py::arg("b"),
        "Whether aggregate is a convex combination of good values with weights at most 1/(phi-b).");

    m.def(
        "rho", [](const std::vector<std::vector<std::vector<double>>>& hs,
                  std::size_t b) { return compute_rho(models_from(hs), b); },
        py::arg("H"), py::arg("b"), "Complete-graph contraction rate for the good agents' H.");
    m.def(
        "assumption_1", [](const std::vector<std::vector<std::vector<double>>>& hs,
                           std::size_t b) { return check_assumption_1(models_from(hs), b); },
        py::arg("H"), py::arg("b"));

    py::class_<Topology>(m, "Topology")
        .def_static("complete", &Topology::complete, py::arg("n"))
        .def_static("from_edges", &Topology::from_edges, py::arg("n"), py::arg("edges"))
        .def_static(
            "parse",
            [](const std::string& text) {
                std::istringstream in(text);
                return parse_edge_list(in);
            },
            py::arg("text"), "Parse the edge-list text format.")
        .def_property_readonly("size", &Topology::size)
        .def_property_readonly("is_complete", &Topology::is_complete)
        .def("edges", &Topology::edges)
        .def("in_neighbors", &Topology::in_neighbors, py::arg("node"))
        .def("__len__", &Topology::size)
        .def("__repr__", [](const Topology& t) {
            return "<Topology nodes=" + std::to_string(t.size()) +
                   " edges=" + std::to_string(t.edge_count()) + ">";
        });

    m.def("achievable", &check_iabc_achievable, py::arg("topology"), py::arg("b"),
          py::arg("budget_log2") = 28,
          "Whether the graph admits resilient consensus against b faults.");
    m.def(
        "reduced_graph_count",
        [](const Topology& t, NodeSet faults, std::size_t b) {
            std::sort(faults.begin(), faults.end());
            const auto c = count_reduced_graphs(t, faults, b);
            return py::make_tuple(c.exact ? py::cast(*c.exact) : py::none(), c.log_count);
        },
        py::arg("topology"), py::arg("faults"), py::arg("b"),
        "(exact count or None on overflow, natural log of the count)");
    m.def("node_connectivity", &node_connectivity, py::arg("topology"));

    m.def(
        "analyze",
        [](const std::string& text, const std::string& base_dir) {
            const ConfigFile cfg = config_from(text, base_dir);
            const auto models = build_models(cfg.sim);
            const Topology topo =
                cfg.sim.topology ? *cfg.sim.topology : Topology::complete(cfg.sim.node_count());
            std::ostringstream out;
            write_rate_report(out, make_rate_report(models, topo, cfg.sim.fault_ids, cfg.sim.b));
            return out.str();
        },
        py::arg("config"), py::arg("base_dir") = ".",
        "Rate report for an INI config given as text, as `key = value` lines.");

    m.def(
        "simulate",
        [](const std::string& text, std::optional<std::uint64_t> seed, const std::string& base_dir) {
            ConfigFile cfg = config_from(text, base_dir);
            if (seed) cfg.sim.seed = *seed;
            SimulationTrace trace;
            {
                py::gil_scoped_release release;
                trace = run(cfg.sim);
            }
            return trace_dict(trace);
        },
        py::arg("config"), py::arg("seed") = py::none(), py::arg("base_dir") = ".",
        "Run one simulation from INI text and return the per-round error trace.");

    m.def(
        "config_keys",
        [] {
            std::vector<std::string> keys;
            for (const auto& k : config_schema()) keys.push_back(k.key);
            return keys;
        },
        "Every accepted `section.key` name.");

    m.attr("__version__") = "0.1.0";
}
