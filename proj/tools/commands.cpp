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


#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "byzest/analysis.hpp"
#include "byzest/config.hpp"
#include "byzest/engine.hpp"
#include "byzest/format.hpp"
#include "byzest/topology.hpp"

namespace byzest::cli {
namespace fs = std::filesystem;

namespace {

// Maps exceptions onto exit codes; config problems are 2, the rest 1.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

std::ofstream open_for_writing(const fs::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
}

void prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw std::runtime_error("cannot create output directory " + dir.string());
}

std::string node_set_text(const NodeSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

}  // namespace

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ConfigFile cfg = load_config(opt.config);
        if (opt.seed) cfg.sim.seed = *opt.seed;
        if (opt.out) cfg.output_dir = *opt.out;
        cfg.sim.jobs = opt.jobs == 0 ? 1 : opt.jobs;

        prepare_dir(cfg.output_dir);
        const fs::path path =
            cfg.output_dir / trace_file_name(cfg.output_prefix, cfg.sim.label, cfg.sim.seed);
        std::ofstream file = open_for_writing(path);

        const SimulationTrace trace = run(cfg.sim);
        write_trace_csv(file, trace);
        file.close();
        if (!file) throw std::runtime_error("failed writing " + path.string());

        out << "trace = " << path.string() << '\n';
        out << "seed = " << trace.seed << '\n';
        out << "rounds = " << trace.rows.back().round << '\n';
        out << "error_initial = " << format_double(trace.initial_error()) << '\n';
        out << "error_final = " << format_double(trace.final_error()) << '\n';
        out << "error_max_linf_final = " << format_double(trace.rows.back().error_max_linf)
            << '\n';
        out << "diverged = " << (trace.diverged ? "true" : "false") << '\n';
        return kExitOk;
    });
}

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ConfigFile cfg = load_config(opt.config);
        const auto models = build_models(cfg.sim);
        const Topology topo =
            cfg.sim.topology ? *cfg.sim.topology : Topology::complete(cfg.sim.node_count());
        const RateReport report = make_rate_report(models, topo, cfg.sim.fault_ids, cfg.sim.b);
        write_rate_report(out, report);
        return kExitOk;
    });
}

int cmd_check_topology(const CheckTopologyOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Topology topo;
        try {
            topo = load_edge_list(opt.graph);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (opt.b >= topo.size()) throw ConfigError("b must be smaller than the node count");

        out << "nodes = " << topo.size() << '\n';
        out << "edges = " << topo.edge_count() << '\n';
        out << "b = " << opt.b << '\n';
        try {
            out << "achievable = " << (check_iabc_achievable(topo, opt.b) ? "true" : "false")
                << '\n';
        } catch (const BudgetExceeded& e) {
            bool many = false;
            for (const auto& c : source_census(topo, opt.b)) many = many || c.with_many_sources;
            out << "achievable = " << (many ? "false" : "true") << " (approx)\n";
            out << "note = " << e.what() << '\n';
        }
        const std::size_t kappa = node_connectivity(topo);
        out << "node_connectivity = " << kappa << '\n';
        out << "connectivity_gate = " << (kappa >= opt.b + 1 ? "pass" : "fail")
            << " (needs at least b+1 = " << opt.b + 1 << ")\n";
        if (topo.size() <= opt.census_max_nodes) {
            for (const auto& c : source_census(topo, opt.b)) {
                out << "census " << node_set_text(c.fault_set)
                    << " reduced_graphs=" << c.reduced_graphs
                    << " one_source=" << c.with_one_source
                    << " many_sources=" << c.with_many_sources
                    << (c.approximate ? " (sampled)" : "") << '\n';
            }
        }
        return kExitOk;
    });
}

int cmd_figure1(const Figure1Options& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opt.seeds == 0) throw ConfigError("--seeds must be at least 1");
        if (opt.rounds == 0) throw ConfigError("--rounds must be at least 1");
        const fs::path dir(opt.out);
        if (fs::exists(dir) && !fs::is_empty(dir) && !opt.force)
            throw ConfigError("output directory " + dir.string() +
                              " is not empty; pass --force to overwrite");
        prepare_dir(dir);

        SimulationConfig base = figure1_base_config();
        base.rounds = opt.rounds;
        base.noise.variance = opt.noise_variance;
        if (opt.noise_variance == 0.0) base.noise.kind = NoiseKind::Zero;

        const std::vector<std::size_t> counts = {4, 5, 6, 7, 8, 9, 10};
        std::vector<SweepPoint> points;
        for (const auto& p : fault_count_sweep(counts)) {
            for (std::size_t s = 0; s < opt.seeds; ++s) {
                const std::uint64_t seed = opt.seed + s;
                points.push_back({p.label, [apply = p.apply, seed](SimulationConfig& c) {
                                      apply(c);
                                      c.seed = seed;
                                  }});
            }
        }
        const auto traces = run_grid(base, points, opt.jobs == 0 ? 1 : opt.jobs);

        std::vector<AveragedCurve> curves;
        for (std::size_t a = 0; a < counts.size(); ++a) {
            const std::span<const SimulationTrace> group(traces.data() + a * opt.seeds,
                                                         opt.seeds);
            curves.push_back(average_error_curves(group, opt.rounds));
            const fs::path path = dir / ("curve_A" + std::to_string(counts[a]) + ".csv");
            std::ofstream f = open_for_writing(path);
            f << "round,error_mean,error_sd,runs,diverged_runs\n";
            const auto& c = curves.back();
            for (std::size_t t = 0; t <= opt.rounds; ++t)
                f << t << ',' << format_double(c.mean[t]) << ',' << format_double(c.sd[t]) << ','
                  << c.runs << ',' << c.diverged << '\n';
            out << "A=" << counts[a] << " error_initial=" << format_double(c.mean.front())
                << " error_final=" << format_double(c.mean.back())
                << " diverged_runs=" << c.diverged << '\n';
        }

        std::ofstream dat = open_for_writing(dir / "figure1.dat");
        dat << "# round";
        for (std::size_t a : counts) dat << " A" << a;
        dat << '\n';
        for (std::size_t t = 0; t <= opt.rounds; ++t) {
            dat << t;
            for (const auto& c : curves) dat << ' ' << format_double(c.mean[t]);
            dat << '\n';
        }

        std::ofstream gp = open_for_writing(dir / "figure1.gp");
        gp << "set terminal pngcairo size 900,600\n"
           << "set output 'figure1.png'\n"
           << "set xlabel 't'\nset ylabel 'Error(t)'\nset logscale y\nset key outside\n"
           << "plot";
        for (std::size_t a = 0; a < counts.size(); ++a)
            gp << (a ? ", \\\n    " : " ") << "'figure1.dat' using 1:" << a + 2
               << " with lines title '|A| = " << counts[a] << "'";
        gp << '\n';
        return kExitOk;
    });
}

}  // namespace byzest::cli
