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


#include <doctest.h>

#include <cmath>
#include <sstream>

#include "byzest/analysis.hpp"
#include "byzest/engine.hpp"

using namespace byzest;

namespace {

std::string csv(const SimulationTrace& t) {
    std::ostringstream out;
    write_trace_csv(out, t);
    return out.str();
}

SimulationConfig noisy_small() {
    SimulationConfig c;
    c.phi = 10;
    c.d = 6;
    c.b = 2;
    c.fault_ids = {10, 11};
    c.observation.rows = 3;
    c.observation.multiplicity = 3;
    c.noise.kind = NoiseKind::UniformBox;
    c.noise.variance = 0.01;
    c.adversary.name = "gaussian_noise";
    c.rounds = 50;
    c.seed = 4;
    return c;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("one agent, identity observation, one step") {
    SimulationConfig c;
    c.phi = 1;
    c.d = 3;
    c.observation.kind = ObservationSpec::Kind::Identity;
    c.rounds = 1;
    const auto trace = run(c);
    REQUIRE(trace.rows.size() == 2);
    CHECK(trace.rows[0].error_mean_l2 > 0.0);
    CHECK(trace.rows[1].error_mean_l2 == 0.0);
}

TEST_CASE("noiseless runs respect the complete-graph envelope") {
    SimulationConfig c = noisy_small();
    c.noise.kind = NoiseKind::Zero;
    c.init.kind = InitSpec::Kind::Random;
    c.init.radius = 3;
    const double rho = compute_rho(build_models(c), c.b);
    REQUIRE(rho < 1.0);
    const auto trace = run(c);
    const double e0 = trace.rows[0].error_max_linf;
    for (const auto& row : trace.rows) {
        REQUIRE(row.error_max_linf <= std::pow(rho, row.round) * e0 + 1e-9);
        REQUIRE(row.envelope == doctest::Approx(std::pow(rho, row.round) * e0));
    }
}

TEST_CASE("geometric decay rate without faults or noise") {
    SimulationConfig c = noisy_small();
    c.noise.kind = NoiseKind::Zero;
    c.fault_ids.clear();
    c.adversary.name = "none";
    c.rounds = 40;
    const double rho = compute_rho(build_models(c), c.b);
    const auto trace = run(c);
    // Fit the slope of log Error(t) over the rounds where it is well above rounding.
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : trace.rows)
        if (row.error_mean_l2 > 1e-12) pts.emplace_back(row.round, std::log(row.error_mean_l2));
    REQUIRE(pts.size() >= 3);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope <= std::log(rho) + 0.05);
}

TEST_CASE("sweep scale: four attackers converge") {
    SimulationConfig c = figure1_base_config();
    const std::size_t four[] = {4};
    const auto traces = run_grid(c, fault_count_sweep(four));
    REQUIRE(traces.size() == 1);
    CHECK(traces[0].label == "A4");
    CHECK(traces[0].final_error() < 0.05 * traces[0].initial_error());
}

TEST_CASE("grid runs") {
    SimulationConfig c = noisy_small();
    c.fault_ids.clear();
    c.rounds = 5;
    c.phi = 30;
    c.d = 10;
    const std::size_t counts[] = {4, 5, 6, 7, 8, 9, 10};
    const auto traces = run_grid(c, fault_count_sweep(counts));
    REQUIRE(traces.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(traces[i].label == "A" + std::to_string(counts[i]));
        CHECK(traces[i].good_ids.size() == 30);
    }
    CHECK(run_grid(c, {}).size() == 1);

    const auto again = run_grid(c, fault_count_sweep(counts), 3);
    for (std::size_t i = 0; i < 7; ++i) CHECK(csv(traces[i]) == csv(again[i]));
}

TEST_CASE("traces are a pure function of the config") {
    SimulationConfig c = noisy_small();
    c.agent_cadence = 7;
    const std::string a = csv(run(c));
    CHECK(a == csv(run(c)));
    c.jobs = 4;
    CHECK(a == csv(run(c)));
    c.seed = 5;
    CHECK(a != csv(run(c)));
}

TEST_CASE("trace csv layout") {
    SimulationConfig c = noisy_small();
    c.agent_cadence = 10;
    const auto trace = run(c);
    std::istringstream in(csv(trace));
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("round,error_mean_l2,error_max_linf,envelope,diverged,agent_0,", 0) == 0);
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (rows == 3) CHECK(line.substr(line.size() - 10) == ",,,,,,,,,,");
        ++rows;
    }
    CHECK(rows == c.rounds + 1);
    CHECK(trace.running_noise_norms.size() == 10);
    CHECK(trace.running_noise_norms[0].size() == c.rounds);
}

TEST_CASE("envelope is infinite without a valid rate") {
    SimulationConfig c = noisy_small();
    c.observation.multiplicity = 2;  // rho = 8/8
    const auto trace = run(c);
    CHECK(std::isinf(trace.rows[3].envelope));
}

TEST_CASE("divergence guard halts and flags the run") {
    SimulationConfig c;
    c.phi = 3;
    c.d = 1;
    std::vector<ObservationModel> models;
    for (std::size_t i = 0; i < 3; ++i) models.emplace_back(i, Mat{{2.0}}, NoiseSpec::zero(1));
    c.models = models;  // z - theta = -3 (x - theta): grows every round
    c.rounds = 100;
    const auto trace = run(c);
    CHECK(trace.diverged);
    CHECK(trace.rows.back().diverged);
    CHECK(trace.rows.size() < 101);
    CHECK(std::isfinite(trace.rows.back().error_mean_l2));
}

TEST_CASE("configuration errors") {
    SimulationConfig c = noisy_small();
    c.fault_ids = {9, 10, 11};
    c.phi = 9;
    CHECK_THROWS_WITH_AS(run(c), doctest::Contains("fault budget exceeded"), ConfigError);

    c = noisy_small();
    c.b = 12;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = noisy_small();
    c.rounds = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = noisy_small();
    c.observation.multiplicity = 11;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = noisy_small();
    c.adversary.name = "nope";
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = noisy_small();
    c.topology = Topology::complete(5);
    CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("sparse neighbourhoods cannot be trimmed") {
    SimulationConfig c;
    c.phi = 4;
    c.d = 2;
    c.b = 1;
    c.topology = Topology::undirected(4, {{0, 1}, {1, 2}, {2, 3}});
    c.observation.kind = ObservationSpec::Kind::Identity;
    CHECK_THROWS_AS(run(c), AggregationUnderflow);
}

TEST_CASE("interval property on an incomplete graph") {
    SimulationConfig c;
    c.phi = 8;
    c.d = 3;
    c.b = 1;
    c.fault_ids = {8};
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId k = 0; k < 3; ++k) {
        for (NodeId a = 0; a < 3; ++a)
            for (NodeId b = 0; b < 3; ++b)
                if (a != b) e.emplace_back(3 * k + a, 3 * k + b);
        for (NodeId a = 0; a < 3; ++a) {
            e.emplace_back(3 * k + a, 3 * ((k + 1) % 3) + a);
            e.emplace_back(3 * ((k + 1) % 3) + a, 3 * k + a);
        }
    }
    c.topology = Topology::from_edges(9, e);
    c.observation.rows = 1;
    c.observation.multiplicity = 2;
    c.adversary.name = "gaussian_noise";
    c.init.kind = InitSpec::Kind::Random;
    c.rounds = 30;
    c.on_round = [&](const RoundSnapshot& snap) {
        for (std::size_t i = 0; i < snap.good_ids.size(); ++i) {
            const NodeId v = snap.good_ids[i];
            for (std::size_t k = 0; k < c.d; ++k) {
                double lo = snap.z[i][k], hi = lo;
                for (NodeId j : snap.topology.in_neighbors(v)) {
                    const auto it = std::find(snap.good_ids.begin(), snap.good_ids.end(), j);
                    if (it == snap.good_ids.end()) continue;
                    const double zj = snap.z[static_cast<std::size_t>(it - snap.good_ids.begin())][k];
                    lo = std::min(lo, zj);
                    hi = std::max(hi, zj);
                }
                REQUIRE(snap.x[i][k] >= lo);
                REQUIRE(snap.x[i][k] <= hi);
            }
        }
    };
    run(c);
}

}  // TEST_SUITE
