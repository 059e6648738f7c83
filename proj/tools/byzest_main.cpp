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


#include <CLI11.hpp>

#include <iostream>

#include "byzest/config.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace byzest::cli;
    CLI::App app{"Byzantine-resilient distributed estimation simulator"};
    app.footer(byzest::describe_config_schema());
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "run one configured simulation");
    simulate->add_option("--config", sim.config, "experiment config file")->required();
    simulate->add_option("--seed", sim.seed, "override run.seed");
    simulate->add_option("--out", sim.out, "override output.dir");
    simulate->add_option("--jobs", sim.jobs, "worker threads per round")->check(CLI::PositiveNumber);

    AnalyzeOptions ana;
    auto* analyze = app.add_subcommand("analyze", "print rates and assumption checks");
    analyze->add_option("--config", ana.config, "experiment config file")->required();

    CheckTopologyOptions topo;
    auto* check = app.add_subcommand("check-topology", "achievability and connectivity of a graph");
    check->add_option("--graph", topo.graph, "edge-list file")->required();
    check->add_option("--b", topo.b, "fault bound")->required();
    check->add_option("--census-max-nodes", topo.census_max_nodes,
                      "print the source-component census for graphs up to this size");

    Figure1Options fig;
    auto* figure = app.add_subcommand("figure1", "run the faulty-count sweep and emit curves");
    figure->add_option("--out", fig.out, "output directory")->required();
    figure->add_option("--seeds", fig.seeds, "seeds averaged per curve");
    figure->add_option("--rounds", fig.rounds, "rounds per run");
    figure->add_option("--seed", fig.seed, "first master seed");
    figure->add_option("--jobs", fig.jobs, "parallel runs")->check(CLI::PositiveNumber);
    figure->add_option("--noise-variance", fig.noise_variance, "uniform noise variance; 0 disables");
    figure->add_flag("--force", fig.force, "write into a non-empty directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (*simulate) return cmd_simulate(sim, std::cout, std::cerr);
    if (*analyze) return cmd_analyze(ana, std::cout, std::cerr);
    if (*check) return cmd_check_topology(topo, std::cout, std::cerr);
    return cmd_figure1(fig, std::cout, std::cerr);
}
