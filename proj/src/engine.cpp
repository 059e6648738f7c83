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


#include "byzest/engine.hpp"

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "byzest/agent.hpp"
#include "byzest/aggregation.hpp"
#include "byzest/analysis.hpp"
#include "byzest/format.hpp"

namespace byzest {
namespace {

template <class Fn>
void parallel_over(std::size_t count, std::size_t jobs, tbb::task_arena* arena, Fn&& fn) {
    if (jobs <= 1 || arena == nullptr || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    arena->execute([&] {
        tbb::parallel_for(tbb::blocked_range<std::size_t>(0, count),
                          [&](const tbb::blocked_range<std::size_t>& r) {
                              for (std::size_t i = r.begin(); i != r.end(); ++i) fn(i);
                          });
    });
}

NodeSet good_ids_of(std::size_t n, const NodeSet& faults) {
    NodeSet good;
    for (NodeId v = 0; v < n; ++v)
        if (!std::binary_search(faults.begin(), faults.end(), v)) good.push_back(v);
    return good;
}

NoiseSpec make_noise(const NoiseSettings& s, std::size_t rows) {
    switch (s.kind) {
        case NoiseKind::Zero: return NoiseSpec::zero(rows);
        case NoiseKind::UniformBox: return NoiseSpec::uniform_box(rows, s.variance);
        case NoiseKind::TruncatedGaussian:
            return NoiseSpec::truncated_gaussian(rows, s.variance, s.bound_C);
    }
    throw ConfigError("unknown noise kind");
}

// Per-round bound on max_i ||x_i(t) - theta*||_inf, or +inf when no valid
// bound applies to this configuration.
class EnvelopeModel {
public:
    EnvelopeModel(const SimulationConfig& cfg, const std::vector<ObservationModel>& models,
                  const Topology& topo, const NodeSet& faults)
        : phi_(cfg.phi), epsilon_(cfg.epsilon) {
        for (const auto& m : models) traces_.push_back(m.noise.covariance_trace());
        try {
            C0_ = compute_C0(models);
            if (topo.is_complete()) {
                const double rho = compute_rho(models, cfg.b);
                if (rho < 1.0) rho_ = rho;
            } else {
                const double rho0 = compute_rho0(models);
                const auto xi = count_reduced_graphs(topo, faults, cfg.b);
                const NodeSet fault_sets[] = {faults};
                if (check_assumption_2(models, topo, fault_sets, cfg.b))
                    gamma_ = gamma_rate(rho0, xi.log_count, cfg.phi, cfg.b);
            }
        } catch (const std::exception&) {
            // No valid rate: the envelope stays infinite.
        }
    }

    void set_initial_error(double e) { init_ = e; }

    double at(std::size_t t) const {
        if (rho_) return theorem1_envelope(*rho_, C0_, traces_, t, init_, phi_, epsilon_);
        if (gamma_) return theorem3_envelope(*gamma_, C0_, traces_, t, init_, phi_, epsilon_);
        return std::numeric_limits<double>::infinity();
    }

private:
    std::size_t phi_;
    double epsilon_;
    double C0_ = 0.0;
    double init_ = 0.0;
    std::vector<double> traces_;
    std::optional<double> rho_;
    std::optional<GammaRate> gamma_;
};

}  // namespace

std::size_t SimulationConfig::node_count() const {
    return topology ? topology->size() : phi + fault_ids.size();
}

void validate(const SimulationConfig& c) {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (c.d == 0) fail("d must be at least 1");
    if (c.phi == 0) fail("phi must be at least 1");
    if (c.rounds == 0) fail("rounds must be at least 1");
    if (!std::is_sorted(c.fault_ids.begin(), c.fault_ids.end()) ||
        std::adjacent_find(c.fault_ids.begin(), c.fault_ids.end()) != c.fault_ids.end())
        fail("fault ids must be sorted and distinct");
    if (c.fault_ids.size() > c.b)
        fail("fault budget exceeded: " + std::to_string(c.fault_ids.size()) +
             " faulty agents but b = " + std::to_string(c.b));
    const std::size_t n = c.node_count();
    if (c.topology && c.phi + c.fault_ids.size() != n)
        fail("phi + |faults| = " + std::to_string(c.phi + c.fault_ids.size()) +
             " does not match the topology's " + std::to_string(n) + " nodes");
    if (!c.fault_ids.empty() && c.fault_ids.back() >= n)
        fail("fault id " + std::to_string(c.fault_ids.back()) + " out of range");
    if (c.b >= n) fail("b must be smaller than the number of agents");
    if (!(c.epsilon >= 0.0) || !std::isfinite(c.epsilon)) fail("epsilon must be >= 0");
    if (!(c.theta_range >= 0.0) || !std::isfinite(c.theta_range))
        fail("theta range must be >= 0");
    if (c.init.kind == InitSpec::Kind::Random && !(c.init.radius >= 0.0))
        fail("init radius must be >= 0");
    if (c.theta_star && c.theta_star->size() != c.d) fail("theta* has the wrong dimension");
    if (c.models) {
        if (c.models->size() != c.phi) fail("need exactly one observation model per good agent");
        for (const auto& m : *c.models)
            if (m.dim() != c.d) fail("observation model of the wrong dimension");
    } else if (c.observation.kind == ObservationSpec::Kind::Selection) {
        const auto& o = c.observation;
        if (o.rows == 0) fail("observation rows must be at least 1");
        if (o.multiplicity == 0 || o.multiplicity > c.phi)
            fail("observation multiplicity must lie in [1, phi]");
        if (c.phi * o.rows < o.multiplicity * c.d)
            fail("phi * rows is too small to observe every coordinate multiplicity times");
    } else if (c.observation.kind == ObservationSpec::Kind::Zero && c.observation.rows == 0) {
        fail("observation rows must be at least 1");
    }
    if (c.noise.kind != NoiseKind::Zero &&
        (!(c.noise.variance >= 0.0) || !std::isfinite(c.noise.variance)))
        fail("noise variance must be finite and >= 0");
    if (c.noise.kind == NoiseKind::TruncatedGaussian && !(c.noise.bound_C > 0.0))
        fail("truncated_gaussian noise needs bound_C > 0");
    try {
        make_strategy(c.adversary, c.d);
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

std::vector<ObservationModel> build_models(const SimulationConfig& c) {
    const NodeSet good = good_ids_of(c.node_count(), c.fault_ids);
    std::vector<ObservationModel> models;
    if (c.models) {
        models = *c.models;
    } else {
        const std::size_t rows =
            c.observation.kind == ObservationSpec::Kind::Identity ? c.d : c.observation.rows;
        const NoiseSpec noise = make_noise(c.noise, rows);
        switch (c.observation.kind) {
            case ObservationSpec::Kind::Selection: {
                Rng rng(c.seed, "observation");
                models = make_coordinate_selection_models(c.d, c.phi, rows,
                                                          c.observation.multiplicity, rng, noise);
                break;
            }
            case ObservationSpec::Kind::Identity:
                models = make_identity_models(c.d, c.phi, noise);
                break;
            case ObservationSpec::Kind::Zero:
                models = make_zero_models(c.d, c.phi, rows, noise);
                break;
        }
    }
    for (std::size_t i = 0; i < models.size(); ++i) models[i].agent_id = good[i];
    return models;
}

SimulationTrace run(const SimulationConfig& cfg) {
    validate(cfg);
    const std::size_t n = cfg.node_count();
    const NodeSet& faults = cfg.fault_ids;
    const Topology topo = cfg.topology ? *cfg.topology : Topology::complete(n);
    const bool complete = topo.is_complete();

    SimulationTrace trace;
    trace.label = cfg.label;
    trace.seed = cfg.seed;
    trace.good_ids = good_ids_of(n, faults);
    trace.per_agent = cfg.agent_cadence > 0;
    const NodeSet& good = trace.good_ids;
    const std::size_t phi = good.size();

    if (!complete) {
        for (NodeId v : good)
            if (topo.in_neighbors(v).size() + 1 < 2 * cfg.b + 1)
                throw AggregationUnderflow("node " + std::to_string(v) + " hears from only " +
                                           std::to_string(topo.in_neighbors(v).size()) +
                                           " neighbours; trimming b = " + std::to_string(cfg.b) +
                                           " needs at least " + std::to_string(2 * cfg.b));
    }

    auto models = build_models(cfg);
    if (cfg.theta_star) {
        trace.theta_star = *cfg.theta_star;
    } else {
        Rng rng(cfg.seed, "theta");
        trace.theta_star = Vec(cfg.d);
        for (std::size_t k = 0; k < cfg.d; ++k)
            trace.theta_star[k] = rng.uniform(-cfg.theta_range, cfg.theta_range);
    }
    const Vec& theta = trace.theta_star;

    std::vector<Vec> observed_truth;  // H_i theta*, for the running noise average
    std::vector<AgentState> agents;
    std::vector<Rng> noise_rngs;
    agents.reserve(phi);
    noise_rngs.reserve(phi);
    for (std::size_t i = 0; i < phi; ++i) {
        Vec x0(cfg.d);
        if (cfg.init.kind == InitSpec::Kind::Random) {
            Rng rng(cfg.seed, "init", good[i]);
            for (std::size_t k = 0; k < cfg.d; ++k) x0[k] = rng.uniform(-cfg.init.radius, cfg.init.radius);
        }
        observed_truth.push_back(matvec(models[i].H, theta));
        agents.emplace_back(good[i], models[i], std::move(x0));
        noise_rngs.emplace_back(cfg.seed, "noise", good[i]);
    }

    auto strategy = make_strategy(cfg.adversary, cfg.d);
    Rng adversary_rng(cfg.seed, "adversary");
    EnvelopeModel envelope(cfg, models, topo, faults);

    std::optional<tbb::task_arena> arena;
    if (cfg.jobs > 1) arena.emplace(static_cast<int>(cfg.jobs));
    tbb::task_arena* arena_ptr = arena ? &*arena : nullptr;

    trace.running_noise_norms.assign(phi, {});
    for (auto& r : trace.running_noise_norms) r.reserve(cfg.rounds);

    std::vector<double> l2(phi), linf(phi);
    auto record = [&](std::size_t t) {
        TraceRow row;
        row.round = t;
        double sum = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < phi; ++i) {
            const Vec err = agents[i].x - theta;
            l2[i] = l2_norm(err);
            linf[i] = linf_norm(err);
            sum += l2[i];
            worst = std::max(worst, linf[i]);
        }
        row.error_mean_l2 = sum / static_cast<double>(phi);
        row.error_max_linf = worst;
        if (t == 0) envelope.set_initial_error(worst);
        row.envelope = envelope.at(t);
        if (cfg.agent_cadence > 0 && t % cfg.agent_cadence == 0) row.agent_errors = l2;
        row.diverged = std::any_of(agents.begin(), agents.end(), [](const AgentState& a) {
            return std::any_of(a.x.begin(), a.x.end(), [](double v) {
                return !(std::abs(v) <= kDivergenceThreshold);
            });
        });
        trace.diverged = trace.diverged || row.diverged;
        trace.rows.push_back(std::move(row));
    };
    record(0);

    std::vector<Vec> z(phi), xs(phi);
    AdversaryOutput out;
    for (std::size_t t = 1; t <= cfg.rounds && !trace.diverged; ++t) {
        for (std::size_t i = 0; i < phi; ++i) xs[i] = agents[i].x;
        parallel_over(phi, cfg.jobs, arena_ptr, [&](std::size_t i) {
            z[i] = local_step(agents[i], theta, noise_rngs[i]);
        });

        out.reset(n);
        if (strategy && !faults.empty()) {
            const AdversaryView view{theta, good, z, xs, faults, topo, t, cfg.b};
            strategy->craft(view, adversary_rng, out);
        }

        if (complete) {
            const SharedColumns shared(z);
            parallel_over(phi, cfg.jobs, arena_ptr, [&](std::size_t i) {
                const auto& inbox = out.inbox[good[i]];
                std::vector<Vec> extra;
                extra.reserve(inbox.size());
                for (const auto& m : inbox) extra.push_back(m.value);
                agents[i].x = trimmed_aggregate_with_shared(shared, extra, cfg.b);
            });
        } else {
            parallel_over(phi, cfg.jobs, arena_ptr, [&](std::size_t i) {
                MessageSet msgs;
                msgs.push_back({good[i], z[i]});
                for (NodeId j : topo.in_neighbors(good[i])) {
                    const auto it = std::lower_bound(good.begin(), good.end(), j);
                    if (it != good.end() && *it == j)
                        msgs.push_back({j, z[static_cast<std::size_t>(it - good.begin())]});
                }
                for (const auto& m : out.inbox[good[i]]) msgs.push_back(m);
                finalize_round(agents[i], msgs, cfg.b);
            });
        }

        if (cfg.on_round) {
            for (std::size_t i = 0; i < phi; ++i) xs[i] = agents[i].x;
            cfg.on_round(RoundSnapshot{t, good, z, out.inbox, xs, topo});
        }
        for (std::size_t i = 0; i < phi; ++i)
            trace.running_noise_norms[i].push_back(
                l2_norm(agents[i].acc.mean() - observed_truth[i]));
        record(t);
    }
    return trace;
}

std::vector<SweepPoint> fault_count_sweep(std::span<const std::size_t> counts) {
    std::vector<SweepPoint> points;
    for (std::size_t a : counts) {
        points.push_back({"A" + std::to_string(a), [a](SimulationConfig& c) {
                              c.fault_ids.clear();
                              for (std::size_t k = 0; k < a; ++k) c.fault_ids.push_back(c.phi + k);
                              c.b = a;
                          }});
    }
    return points;
}

std::vector<SimulationTrace> run_grid(const SimulationConfig& base,
                                      std::span<const SweepPoint> sweep, std::size_t jobs) {
    if (sweep.empty()) return {run(base)};
    std::vector<SimulationConfig> configs;
    for (const auto& p : sweep) {
        SimulationConfig c = base;
        if (p.apply) p.apply(c);
        c.label = p.label;
        if (jobs > 1) c.jobs = 1;
        configs.push_back(std::move(c));
    }
    std::vector<SimulationTrace> traces(configs.size());
    std::optional<tbb::task_arena> arena;
    if (jobs > 1) arena.emplace(static_cast<int>(jobs));
    parallel_over(configs.size(), jobs, arena ? &*arena : nullptr,
                  [&](std::size_t i) { traces[i] = run(configs[i]); });
    return traces;
}

void write_trace_csv(std::ostream& out, const SimulationTrace& trace) {
    out << "round,error_mean_l2,error_max_linf,envelope,diverged";
    if (trace.per_agent)
        for (NodeId id : trace.good_ids) out << ",agent_" << id;
    out << '\n';
    for (const auto& row : trace.rows) {
        out << row.round << ',' << format_double(row.error_mean_l2) << ','
            << format_double(row.error_max_linf) << ',' << format_double(row.envelope) << ','
            << (row.diverged ? 1 : 0);
        if (trace.per_agent) {
            for (std::size_t i = 0; i < trace.good_ids.size(); ++i) {
                out << ',';
                if (!row.agent_errors.empty()) out << format_double(row.agent_errors[i]);
            }
        }
        out << '\n';
    }
}

SimulationConfig figure1_base_config() {
    SimulationConfig c;
    c.phi = 30;
    c.d = 50;
    c.observation.kind = ObservationSpec::Kind::Selection;
    c.observation.rows = 20;
    c.observation.multiplicity = 7;
    c.noise.kind = NoiseKind::UniformBox;
    c.noise.variance = 1e-4;
    c.adversary.name = "gaussian_noise";
    c.adversary.sigma = 3.0;
    c.rounds = 500;
    c.theta_range = 1.0;
    return c;
}

AveragedCurve average_error_curves(std::span<const SimulationTrace> traces, std::size_t rounds) {
    AveragedCurve c;
    c.runs = traces.size();
    c.mean.assign(rounds + 1, 0.0);
    c.sd.assign(rounds + 1, 0.0);
    if (traces.empty()) return c;
    auto value = [](const SimulationTrace& tr, std::size_t t) {
        return t < tr.rows.size() ? tr.rows[t].error_mean_l2 : tr.rows.back().error_mean_l2;
    };
    for (const auto& tr : traces) c.diverged += tr.diverged ? 1 : 0;
    const double k = static_cast<double>(traces.size());
    for (std::size_t t = 0; t <= rounds; ++t) {
        double sum = 0.0;
        for (const auto& tr : traces) sum += value(tr, t);
        c.mean[t] = sum / k;
        double ss = 0.0;
        for (const auto& tr : traces) ss += (value(tr, t) - c.mean[t]) * (value(tr, t) - c.mean[t]);
        c.sd[t] = traces.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
    }
    return c;
}

}  // namespace byzest
