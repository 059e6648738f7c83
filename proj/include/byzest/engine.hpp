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


#pragma once

// Round-synchronous simulation: every good agent takes its local step, the
// adversary writes its messages, z-values travel along the topology's edges,
// and every good agent aggregates.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "byzest/adversary.hpp"
#include "byzest/observation.hpp"
#include "byzest/topology.hpp"

namespace byzest {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ObservationSpec {
    enum class Kind { Selection, Identity, Zero };
    Kind kind = Kind::Selection;
    std::size_t rows = 1;
    std::size_t multiplicity = 1;
};

struct NoiseSettings {
    NoiseKind kind = NoiseKind::Zero;
    double variance = 0.0;
    double bound_C = 0.0;  // truncated_gaussian only
};

struct InitSpec {
    enum class Kind { Zero, Random };
    Kind kind = Kind::Zero;
    double radius = 1.0;  // random: uniform in the l_inf ball of this radius
};

/// What an observer sees after each round's aggregation.
struct RoundSnapshot {
    std::size_t round = 0;
    const NodeSet& good_ids;
    const std::vector<Vec>& z;             // good z-values, aligned with good_ids
    const std::vector<MessageSet>& inbox;  // faulty messages by receiver id
    const std::vector<Vec>& x;             // new estimates, aligned with good_ids
    const Topology& topology;
};

struct SimulationConfig {
    std::size_t d = 1;
    std::size_t phi = 1;
    NodeSet fault_ids;
    std::size_t b = 0;
    std::size_t rounds = 1;
    std::optional<Topology> topology;  // empty: complete graph on phi + |faults| nodes
    ObservationSpec observation;
    NoiseSettings noise;
    /// Overrides the generator; one model per good node in ascending id order.
    std::optional<std::vector<ObservationModel>> models;
    AdversarySpec adversary;
    InitSpec init;
    double theta_range = 1.0;  // theta* components uniform in [-range, range]
    std::optional<Vec> theta_star;
    std::uint64_t seed = 1;
    double epsilon = 0.0;
    std::size_t agent_cadence = 0;  // per-agent error columns every k rounds; 0 = off
    std::size_t jobs = 1;
    std::string label;
    /// Called once per round, after aggregation. Not part of the trace.
    std::function<void(const RoundSnapshot&)> on_round;

    std::size_t node_count() const;
};

/// Throws ConfigError on any violated precondition.
void validate(const SimulationConfig& config);

inline constexpr double kDivergenceThreshold = 1e12;

struct TraceRow {
    std::size_t round = 0;
    double error_mean_l2 = 0.0;
    double error_max_linf = 0.0;
    double envelope = 0.0;
    bool diverged = false;
    std::vector<double> agent_errors;  // empty off-cadence
};

struct SimulationTrace {
    std::string label;
    std::uint64_t seed = 0;
    NodeSet good_ids;
    Vec theta_star;
    std::vector<TraceRow> rows;
    bool diverged = false;
    bool per_agent = false;
    /// running_noise_norms[i][s-1] = || mean_{r<=s} w_i(r) || for good agent i.
    std::vector<std::vector<double>> running_noise_norms;

    double initial_error() const { return rows.front().error_mean_l2; }
    double final_error() const { return rows.back().error_mean_l2; }
};

/// Models for the good agents: the configured ones or freshly generated.
std::vector<ObservationModel> build_models(const SimulationConfig& config);

SimulationTrace run(const SimulationConfig& config);

struct SweepPoint {
    std::string label;
    std::function<void(SimulationConfig&)> apply;
};

/// Points for the faulty-count sweep: faults are the last |A| ids, b = |A|.
std::vector<SweepPoint> fault_count_sweep(std::span<const std::size_t> counts);

/// One run per point, or the base run alone for an empty sweep. Runs are
/// spread over `jobs` workers; results come back in sweep order.
std::vector<SimulationTrace> run_grid(const SimulationConfig& base,
                                      std::span<const SweepPoint> sweep, std::size_t jobs = 1);

void write_trace_csv(std::ostream& out, const SimulationTrace& trace);

/// Canned sweep setting: 30 good agents on a complete graph, d = 50, 20
/// selection rows per agent observing each coordinate 7 times, small uniform
/// noise, Gaussian attack with sigma 3, 500 rounds.
SimulationConfig figure1_base_config();

/// Per-round mean and standard deviation of Error(t) across runs. A run that
/// halted early contributes its last value to the remaining rounds.
struct AveragedCurve {
    std::vector<double> mean;
    std::vector<double> sd;
    std::size_t runs = 0;
    std::size_t diverged = 0;
};

AveragedCurve average_error_curves(std::span<const SimulationTrace> traces, std::size_t rounds);

}  // namespace byzest
