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

#include "byzest/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "byzest/format.hpp"

namespace byzest {
namespace {

// Column norms of selection-type matrices are exact, but general H carries
// rounding; these absorb it.
constexpr double kStrictMargin = 1e-12;

bool is_strict(double norm) { return norm < 1.0 - kStrictMargin; }

void require_phi_above_b(std::size_t phi, std::size_t b) {
    if (phi == 0) throw std::invalid_argument("empty good set");
    if (phi <= b)
        throw std::invalid_argument("need phi > b, got phi = " + std::to_string(phi) +
                                    ", b = " + std::to_string(b));
}

std::size_t common_dim(std::span<const ObservationModel> models) {
    const std::size_t d = models.front().dim();
    for (const auto& m : models)
        if (m.dim() != d) throw std::invalid_argument("observation models of differing dimension");
    return d;
}

std::vector<double> averaged_column_norms(std::span<const ObservationModel> models,
                                          std::size_t b) {
    require_phi_above_b(models.size(), b);
    const std::size_t d = common_dim(models);
    const auto norms = error_propagation_column_norms(models);
    std::vector<double> avg(d, 0.0);
    for (const auto& row : norms)
        for (std::size_t k = 0; k < d; ++k) avg[k] += row[k];
    for (auto& a : avg) a /= static_cast<double>(models.size() - b);
    return avg;
}

struct NodeNorms {
    // node id -> per-coordinate column norms; missing for nodes without a model.
    std::map<NodeId, std::vector<double>> by_node;
};

NodeNorms index_norms(std::span<const ObservationModel> models) {
    NodeNorms out;
    const auto norms = error_propagation_column_norms(models);
    for (std::size_t j = 0; j < models.size(); ++j) {
        if (!out.by_node.emplace(models[j].agent_id, norms[j]).second)
            throw std::invalid_argument("duplicate observation model for node " +
                                        std::to_string(models[j].agent_id));
    }
    return out;
}

const std::vector<double>& norms_of(const NodeNorms& idx, NodeId v) {
    const auto it = idx.by_node.find(v);
    if (it == idx.by_node.end())
        throw std::invalid_argument("no observation model for good node " + std::to_string(v));
    return it->second;
}

// Good nodes whose closed in-neighbourhood holds >= b+1 strict agents for
// every coordinate.
std::vector<bool> qualified_nodes(const NodeNorms& idx, const Topology& topo,
                                  const NodeSet& faults, std::size_t b, std::size_t d) {
    std::vector<bool> is_fault(topo.size(), false);
    for (NodeId f : faults) is_fault.at(f) = true;
    std::vector<bool> qualified(topo.size(), false);
    for (NodeId i = 0; i < topo.size(); ++i) {
        if (is_fault[i]) continue;
        NodeSet closed{i};
        for (NodeId j : topo.in_neighbors(i))
            if (!is_fault[j]) closed.push_back(j);
        bool ok = true;
        for (std::size_t k = 0; k < d && ok; ++k) {
            std::size_t strict = 0;
            for (NodeId j : closed)
                if (is_strict(norms_of(idx, j)[k])) ++strict;
            ok = strict >= b + 1;
        }
        qualified[i] = ok;
    }
    return qualified;
}

bool norms_at_most_one(const NodeNorms& idx, const Topology& topo, const NodeSet& faults) {
    for (NodeId v = 0; v < topo.size(); ++v) {
        if (std::binary_search(faults.begin(), faults.end(), v)) continue;
        for (double norm : norms_of(idx, v))
            if (norm > 1.0 + kStrictMargin) return false;
    }
    return true;
}

NodeSet sorted_set(NodeSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

template <class Power>
double envelope(Power power, double C0, std::span<const double> sigma_traces, std::size_t t,
                double init_err, std::size_t phi, double epsilon) {
    if (!(init_err >= 0.0)) throw std::domain_error("initial error must be non-negative");
    if (!(epsilon >= 0.0)) throw std::domain_error("epsilon must be non-negative");
    double noise_scale = 0.0;
    for (double tr : sigma_traces) {
        if (!(tr >= 0.0)) throw std::domain_error("covariance traces must be non-negative");
        noise_scale += std::sqrt(tr);
    }
    double drift = 0.0;
    if (noise_scale > 0.0)
        for (std::size_t m = 1; m < t; ++m)
            drift += power(static_cast<double>(m)) / std::sqrt(static_cast<double>(t - m));
    return power(static_cast<double>(t)) * init_err + C0 * noise_scale * drift +
           static_cast<double>(phi) * epsilon;
}

}  // namespace

std::vector<std::vector<double>> error_propagation_column_norms(
    std::span<const ObservationModel> models) {
    std::vector<std::vector<double>> out;
    out.reserve(models.size());
    for (const auto& m : models) {
        const Mat e = identity_minus_gram(m.H);
        std::vector<double> row(e.cols());
        for (std::size_t k = 0; k < e.cols(); ++k) row[k] = l1_norm_column(e, k);
        out.push_back(std::move(row));
    }
    return out;
}

bool check_assumption_1(std::span<const ObservationModel> models, std::size_t b) {
    const auto avg = averaged_column_norms(models, b);
    return std::all_of(avg.begin(), avg.end(), [](double a) { return a < 1.0; });
}

double compute_rho(std::span<const ObservationModel> models, std::size_t b) {
    const auto avg = averaged_column_norms(models, b);
    return *std::max_element(avg.begin(), avg.end());
}

double compute_rho0(std::span<const ObservationModel> models) {
    if (models.empty()) throw std::invalid_argument("empty good set");
    const std::size_t d = common_dim(models);
    const auto norms = error_propagation_column_norms(models);
    double rho0 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        std::optional<double> best;
        for (const auto& row : norms)
            if (is_strict(row[k])) best = std::max(best.value_or(0.0), row[k]);
        if (!best)
            throw std::domain_error("coordinate " + std::to_string(k) +
                                    " has no agent with column norm below 1");
        rho0 = std::max(rho0, *best);
    }
    return rho0;
}

bool check_assumption_2(std::span<const ObservationModel> models, const Topology& topo,
                        std::span<const NodeSet> fault_sets, std::size_t b) {
    if (models.empty()) throw std::invalid_argument("empty good set");
    const std::size_t d = common_dim(models);
    const NodeNorms idx = index_norms(models);
    for (const NodeSet& raw : fault_sets) {
        const NodeSet faults = sorted_set(raw);
        if (!norms_at_most_one(idx, topo, faults)) return false;
        if (!has_unique_source_everywhere(topo, faults, b))
            throw MultipleSourceComponents(
                "a reduced graph has more than one source component; the topology does not "
                "support resilient scalar consensus for this fault set");
        const auto qualified = qualified_nodes(idx, topo, faults, b, d);
        NodeSet unqualified;
        for (NodeId v = 0; v < topo.size(); ++v)
            if (!qualified[v] && !std::binary_search(faults.begin(), faults.end(), v))
                unqualified.push_back(v);
        // A reduced graph whose source component avoids every qualified node
        // exists iff some nonempty set of unqualified nodes can be closed off.
        if (!maximal_closable_subset(topo, faults, unqualified, b).empty()) return false;
    }
    return true;
}

bool check_assumption_2_by_enumeration(std::span<const ObservationModel> models,
                                       const Topology& topo, std::span<const NodeSet> fault_sets,
                                       std::size_t b, std::uint64_t budget) {
    if (models.empty()) throw std::invalid_argument("empty good set");
    const std::size_t d = common_dim(models);
    const NodeNorms idx = index_norms(models);
    for (const NodeSet& raw : fault_sets) {
        const NodeSet faults = sorted_set(raw);
        if (!norms_at_most_one(idx, topo, faults)) return false;
        const auto qualified = qualified_nodes(idx, topo, faults, b, d);
        bool ok = true;
        // Walk the whole set so a multi-source graph is reported regardless
        // of where it sits in the enumeration order.
        ReducedGraphEnumerator it(topo, faults, b, budget);
        ReducedGraph g;
        while (it.next(g)) {
            const auto report = source_components(g);
            if (report.source_count() != 1)
                throw MultipleSourceComponents("reduced graph with " +
                                               std::to_string(report.source_count()) +
                                               " source components");
            const NodeSet& source = report.components[report.sources.front()];
            if (std::none_of(source.begin(), source.end(),
                             [&](NodeId v) { return qualified[v]; }))
                ok = false;
        }
        if (!ok) return false;
    }
    return true;
}

GammaRate gamma_rate(double rho0, double log_xi, std::size_t phi, std::size_t b) {
    if (!(rho0 >= 0.0 && rho0 < 1.0)) throw std::domain_error("gamma needs rho0 in [0, 1)");
    if (!(log_xi >= 0.0) || !std::isfinite(log_xi)) throw std::domain_error("gamma needs xi >= 1");
    require_phi_above_b(phi, b);
    GammaRate r;
    r.period = std::exp(log_xi) * static_cast<double>(phi);
    const double log_delta =
        std::log1p(-rho0) - r.period * std::log(2.0 * static_cast<double>(phi - b));
    const double delta = std::exp(log_delta);
    r.gamma = 1.0 - delta;
    r.log_gamma = std::log1p(-delta);
    return r;
}

double compute_gamma(double rho0, double xi, std::size_t phi, std::size_t b) {
    if (!(xi >= 1.0)) throw std::domain_error("gamma needs xi >= 1");
    return gamma_rate(rho0, std::log(xi), phi, b).gamma;
}

double cumulative_noise_series(std::span<const double> running_noise_norms, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::domain_error("lambda must lie in (0, 1)");
    const std::size_t t = running_noise_norms.size();
    double sum = 0.0, weight = 1.0;
    for (std::size_t m = 0; m < t; ++m) {
        sum += weight * running_noise_norms[t - m - 1];
        weight *= lambda;
    }
    return sum;
}

ConcentrationBound concentration_bound(double sigma_trace, double lambda, std::size_t t,
                                       double epsilon, double bound_C) {
    if (t < 1) throw std::domain_error("t must be at least 1");
    if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::domain_error("lambda must lie in (0, 1)");
    if (!(sigma_trace >= 0.0)) throw std::domain_error("covariance trace must be non-negative");
    if (!(bound_C >= 0.0)) throw std::domain_error("noise bound must be non-negative");
    ConcentrationBound out;
    // The drift sum starts at m = 1, as in the stated bound.
    double weight = lambda;
    for (std::size_t m = 1; m < t; ++m) {
        out.mean_term += weight / std::sqrt(static_cast<double>(t - m));
        weight *= lambda;
    }
    out.mean_term *= std::sqrt(sigma_trace);
    const double exponent = -epsilon * epsilon * (1.0 - lambda) * (1.0 - lambda) *
                            static_cast<double>(t) / (8.0 * bound_C * bound_C);
    out.tail_prob = std::exp(exponent);
    return out;
}

double theorem1_envelope(double rho, double C0, std::span<const double> sigma_traces,
                         std::size_t t, double init_err, std::size_t phi, double epsilon) {
    if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("envelope needs rho in [0, 1)");
    return envelope([rho](double m) { return std::pow(rho, m); }, C0, sigma_traces, t, init_err,
                    phi, epsilon);
}

double theorem3_envelope(const GammaRate& rate, double C0, std::span<const double> sigma_traces,
                         std::size_t t, double init_err, std::size_t phi, double epsilon) {
    if (!(rate.log_gamma < 0.0) && rate.gamma != 1.0)
        throw std::domain_error("envelope needs gamma in (0, 1]");
    return envelope([&rate](double m) { return std::exp(m / rate.period * rate.log_gamma); }, C0,
                    sigma_traces, t, init_err, phi, epsilon);
}

double compute_C0(std::span<const ObservationModel> models) {
    double c0 = 0.0;
    for (const auto& m : models) c0 = std::max(c0, operator_norm(m.H));
    return c0;
}

RateReport make_rate_report(std::span<const ObservationModel> models, const Topology& topo,
                            const NodeSet& fault_set, std::size_t b) {
    RateReport r;
    r.phi = models.size();
    r.b = b;
    r.C0 = compute_C0(models);
    if (r.phi > b) {
        r.rho = compute_rho(models, b);
        r.assumption1_ok = check_assumption_1(models, b);
    } else {
        r.rho = std::numeric_limits<double>::infinity();
        r.notes.push_back("phi <= b: averaged column norms undefined");
    }
    try {
        r.rho0 = compute_rho0(models);
    } catch (const std::domain_error& e) {
        r.notes.push_back(std::string("rho0 undefined: ") + e.what());
    }

    if (topo.is_complete()) {
        r.notes.push_back("complete graph: incomplete-graph conditions not evaluated");
        return r;
    }

    r.xi = count_reduced_graphs(topo, fault_set, b);
    if (!r.xi->exact) r.notes.push_back("xi overflows 64 bits; reported as a logarithm");

    try {
        r.iabc_ok = check_iabc_achievable(topo, b);
    } catch (const BudgetExceeded& e) {
        const auto census = source_census(topo, b);
        bool any_multi = false;
        for (const auto& c : census) any_multi = any_multi || c.with_many_sources > 0;
        r.iabc_ok = !any_multi;
        r.iabc_approximate = true;
        r.notes.push_back(std::string("achievability sampled, not exact: ") + e.what());
    }

    const NodeSet faults[] = {fault_set};
    try {
        r.assumption2_ok = check_assumption_2(models, topo, faults, b);
    } catch (const MultipleSourceComponents& e) {
        r.assumption2_ok = false;
        r.notes.push_back(std::string("assumption 2 fails: ") + e.what());
    } catch (const BudgetExceeded& e) {
        r.notes.push_back(std::string("assumption 2 not evaluated: ") + e.what());
    }

    if (r.rho0 && r.phi > b) r.gamma = gamma_rate(*r.rho0, r.xi->log_count, r.phi, b);
    return r;
}

void write_rate_report(std::ostream& out, const RateReport& r) {
    auto yes_no = [](bool v) { return v ? "true" : "false"; };
    out << "phi = " << r.phi << '\n';
    out << "b = " << r.b << '\n';
    out << "rho = " << format_double(r.rho) << '\n';
    out << "rho0 = " << (r.rho0 ? format_double(*r.rho0) : "n/a") << '\n';
    if (r.xi) {
        if (r.xi->exact)
            out << "xi = " << *r.xi->exact << '\n';
        else
            out << "xi = approx\n";
        out << "log_xi = " << format_double(r.xi->log_count) << '\n';
    } else {
        out << "xi = n/a\n";
    }
    if (r.gamma) {
        out << "gamma = " << format_double(r.gamma->gamma) << '\n';
        out << "log_gamma = " << format_double(r.gamma->log_gamma) << '\n';
    } else {
        out << "gamma = n/a\n";
    }
    out << "C0 = " << format_double(r.C0) << '\n';
    out << "assumption1_ok = " << yes_no(r.assumption1_ok) << '\n';
    out << "assumption2_ok = " << (r.assumption2_ok ? yes_no(*r.assumption2_ok) : "n/a") << '\n';
    out << "iabc_ok = "
        << (r.iabc_ok ? std::string(yes_no(*r.iabc_ok)) + (r.iabc_approximate ? " (approx)" : "")
                      : std::string("n/a"))
        << '\n';
    for (const auto& note : r.notes) out << "note = " << note << '\n';
}

}  // namespace byzest
