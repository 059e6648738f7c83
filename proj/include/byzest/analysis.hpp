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

// Observability conditions, contraction rates, the cumulative-noise series
// and the finite-time error envelopes.
//
// Throughout, `models` are the good agents' observation models and
// model.agent_id is the node id in the topology.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "byzest/observation.hpp"
#include "byzest/topology.hpp"

namespace byzest {

/// norms[j][k] = || (I - H_j^T H_j) e_k ||_1.
std::vector<std::vector<double>> error_propagation_column_norms(
    std::span<const ObservationModel> models);

/// Averaged column norm over the good agents is below 1 for every coordinate.
/// Throws std::invalid_argument for an empty set or phi <= b.
bool check_assumption_1(std::span<const ObservationModel> models, std::size_t b);

/// max_k sum_j ||(I - H_j^T H_j) e_k||_1 / (phi - b).
double compute_rho(std::span<const ObservationModel> models, std::size_t b);

/// max_k of the largest column norm that is strictly below 1. Throws
/// std::domain_error when some coordinate has no strict agent.
double compute_rho0(std::span<const ObservationModel> models);

/// Column-norm bound for incomplete graphs. For every fault set: every good
/// column norm is at most 1, and every reduced graph's source component holds
/// a node with at least b+1 strict agents (per coordinate) among its
/// in-neighbours and itself. `models` must cover every node that is good
/// under some listed fault set. Throws MultipleSourceComponents if a fault set
/// admits a reduced graph with several source components, BudgetExceeded if
/// the closable-set search is too large.
bool check_assumption_2(std::span<const ObservationModel> models, const Topology& topo,
                        std::span<const NodeSet> fault_sets, std::size_t b);

/// Literal route for small graphs: walk every reduced graph.
bool check_assumption_2_by_enumeration(std::span<const ObservationModel> models,
                                       const Topology& topo, std::span<const NodeSet> fault_sets,
                                       std::size_t b,
                                       std::uint64_t budget = kDefaultEnumerationBudget);

/// Incomplete-graph rate gamma = 1 - (1 - rho0) / (2 (phi - b))^(xi phi).
/// Kept in log form because the exponent is astronomically large for all
/// but toy graphs.
struct GammaRate {
    double gamma = 1.0;
    double log_gamma = 0.0;  // log(gamma), accurate even when gamma rounds to 1
    double period = 1.0;     // xi * phi
};

GammaRate gamma_rate(double rho0, double log_xi, std::size_t phi, std::size_t b);
double compute_gamma(double rho0, double xi, std::size_t phi, std::size_t b);

/// R_j(lambda, t) = sum_{m=0}^{t-1} lambda^m ||wbar_j(t - m)||, where
/// running_noise_norms[s-1] = ||(1/s) sum_{r<=s} w_j(r)|| for s = 1..t.
double cumulative_noise_series(std::span<const double> running_noise_norms, double lambda);

struct ConcentrationBound {
    double mean_term = 0.0;  // sqrt(tr Sigma) * sum_{m=1}^{t-1} lambda^m / sqrt(t - m)
    double tail_prob = 0.0;  // exp(-eps^2 (1 - lambda)^2 t / (8 C^2))
};

ConcentrationBound concentration_bound(double sigma_trace, double lambda, std::size_t t,
                                       double epsilon, double bound_C);

/// Complete-graph finite-time envelope on max_i ||x_i(t) - theta*||_inf:
///   rho^t init + C0 (sum_j sqrt(tr Sigma_j)) sum_{m=1}^{t-1} rho^m / sqrt(t-m) + phi eps.
double theorem1_envelope(double rho, double C0, std::span<const double> sigma_traces,
                         std::size_t t, double init_err, std::size_t phi, double epsilon);

/// Incomplete-graph envelope: rho^m replaced by gamma^(m / (xi phi)).
double theorem3_envelope(const GammaRate& rate, double C0, std::span<const double> sigma_traces,
                         std::size_t t, double init_err, std::size_t phi, double epsilon);

/// max_i ||H_i||_op over the good agents.
double compute_C0(std::span<const ObservationModel> models);

struct RateReport {
    double rho = 0.0;
    std::optional<double> rho0;
    std::optional<GammaRate> gamma;
    std::optional<ReducedGraphCount> xi;
    double C0 = 0.0;
    std::size_t phi = 0;
    std::size_t b = 0;
    bool assumption1_ok = false;
    std::optional<bool> assumption2_ok;  // empty: not evaluated
    std::optional<bool> iabc_ok;
    bool iabc_approximate = false;
    std::vector<std::string> notes;
};

/// Builds the full report for one configured fault set. Never throws for
/// budget problems; those become notes and empty fields.
RateReport make_rate_report(std::span<const ObservationModel> models, const Topology& topo,
                            const NodeSet& fault_set, std::size_t b);

/// Flat `key = value` lines.
void write_rate_report(std::ostream& out, const RateReport& report);

}  // namespace byzest
