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

#include "byzest/topology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>
#include <boost/graph/strong_components.hpp>

namespace byzest {
namespace {

void check_node(std::size_t n, NodeId v) {
    if (v >= n)
        throw std::out_of_range("node " + std::to_string(v) + " out of range for " +
                                std::to_string(n) + " nodes");
}

NodeSet normalized_fault_set(std::size_t n, NodeSet fault_set, std::size_t b) {
    std::sort(fault_set.begin(), fault_set.end());
    fault_set.erase(std::unique(fault_set.begin(), fault_set.end()), fault_set.end());
    for (NodeId v : fault_set) check_node(n, v);
    if (fault_set.size() > b)
        throw std::invalid_argument("fault set of size " + std::to_string(fault_set.size()) +
                                    " exceeds b = " + std::to_string(b));
    return fault_set;
}

bool contains(const NodeSet& s, NodeId v) { return std::binary_search(s.begin(), s.end(), v); }

NodeSet good_in_neighbors(const Topology& topo, const NodeSet& faults, NodeId i) {
    NodeSet out;
    for (NodeId j : topo.in_neighbors(i))
        if (!contains(faults, j)) out.push_back(j);
    return out;
}

// All subsets of `pool` with at most `k` elements, sorted, empty set first.
std::vector<NodeSet> subsets_up_to(const NodeSet& pool, std::size_t k) {
    std::vector<NodeSet> out{NodeSet{}};
    NodeSet current;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (current.size() == k) return;
        for (std::size_t p = start; p < pool.size(); ++p) {
            current.push_back(pool[p]);
            out.push_back(current);
            self(self, p + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Saturating multiply; returns nullopt on overflow.
std::optional<std::uint64_t> checked_mul(std::optional<std::uint64_t> a, std::uint64_t b) {
    if (!a) return std::nullopt;
    if (b != 0 && *a > std::numeric_limits<std::uint64_t>::max() / b) return std::nullopt;
    return *a * b;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

Topology Topology::complete(std::size_t n) {
    Topology t;
    t.in_.resize(n);
    t.out_.resize(n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
            if (i != j) {
                t.in_[i].push_back(j);
                t.out_[j].push_back(i);
            }
    t.complete_ = true;
    return t;
}

Topology Topology::from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    Topology t;
    t.in_.resize(n);
    t.out_.resize(n);
    for (auto [from, to] : edges) {
        check_node(n, from);
        check_node(n, to);
        if (from == to) continue;
        t.in_[to].push_back(from);
        t.out_[from].push_back(to);
    }
    for (auto* lists : {&t.in_, &t.out_})
        for (auto& l : *lists) {
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
        }
    t.complete_ = t.edge_count() == n * (n - (n > 0 ? 1 : 0));
    return t;
}

Topology Topology::undirected(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::vector<std::pair<NodeId, NodeId>> both;
    both.reserve(edges.size() * 2);
    for (auto [a, b] : edges) {
        both.emplace_back(a, b);
        both.emplace_back(b, a);
    }
    return from_edges(n, both);
}

std::size_t Topology::edge_count() const noexcept {
    std::size_t c = 0;
    for (const auto& l : in_) c += l.size();
    return c;
}

bool Topology::has_edge(NodeId from, NodeId to) const { return contains(in_.at(to), from); }

std::vector<std::pair<NodeId, NodeId>> Topology::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId from = 0; from < out_.size(); ++from)
        for (NodeId to : out_[from]) out.emplace_back(from, to);
    return out;
}

Topology parse_edge_list(std::istream& in) {
    std::optional<std::size_t> n;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "n" || first == "complete") {
            if (n) fail("duplicate header");
            long long count = -1;
            if (!(ls >> count) || count < 0) fail("expected a node count after '" + first + "'");
            n = static_cast<std::size_t>(count);
            if (first == "complete") {
                std::string extra;
                while (std::getline(in, line)) {
                    ++line_no;
                    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
                    std::istringstream rest(line);
                    if (rest >> extra) fail("'complete' takes no edge lines");
                }
                return Topology::complete(*n);
            }
            continue;
        }
        if (!n) fail("missing 'n <count>' header before edges");
        long long src = -1, dst = -1;
        std::istringstream es(line);
        if (!(es >> src >> dst) || src < 0 || dst < 0) fail("expected 'src dst'");
        std::string extra;
        if (es >> extra) fail("trailing tokens");
        if (static_cast<std::size_t>(src) >= *n || static_cast<std::size_t>(dst) >= *n)
            fail("node id out of range");
        edges.emplace_back(static_cast<NodeId>(src), static_cast<NodeId>(dst));
    }
    if (!n) throw std::invalid_argument("edge list: missing 'n <count>' or 'complete <n>' header");
    return Topology::from_edges(*n, edges);
}

Topology load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file " + path.string());
    return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Topology& topo) {
    if (topo.is_complete()) {
        out << "complete " << topo.size() << '\n';
        return;
    }
    out << "n " << topo.size() << '\n';
    for (auto [from, to] : topo.edges()) out << from << ' ' << to << '\n';
}

std::vector<std::pair<NodeId, NodeId>> ReducedGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId to = 0; to < in.size(); ++to)
        for (NodeId from : in[to]) out.emplace_back(from, to);
    std::sort(out.begin(), out.end());
    return out;
}

ReducedGraphCount count_reduced_graphs(const Topology& topo, const NodeSet& fault_set,
                                       std::size_t b) {
    const NodeSet faults = normalized_fault_set(topo.size(), fault_set, b);
    ReducedGraphCount count;
    count.exact = 1;
    for (NodeId i = 0; i < topo.size(); ++i) {
        if (contains(faults, i)) continue;
        const std::size_t indeg = good_in_neighbors(topo, faults, i).size();
        double choices = 0.0;
        std::optional<std::uint64_t> exact_choices = 0;
        for (std::size_t j = 0; j <= std::min(b, indeg); ++j) {
            choices += std::exp(std::lgamma(indeg + 1.0) - std::lgamma(j + 1.0) -
                                std::lgamma(indeg - j + 1.0));
            const std::uint64_t c = binomial(indeg, j);
            if (exact_choices && *exact_choices <= std::numeric_limits<std::uint64_t>::max() - c)
                *exact_choices += c;
            else
                exact_choices.reset();
        }
        count.log_count += std::log(choices);
        count.exact = exact_choices ? checked_mul(count.exact, *exact_choices) : std::nullopt;
    }
    if (count.exact) count.log_count = std::log(static_cast<double>(*count.exact));
    return count;
}

ReducedGraphEnumerator::ReducedGraphEnumerator(const Topology& topo, NodeSet fault_set,
                                               std::size_t b, std::uint64_t budget)
    : n_(topo.size()) {
    const NodeSet faults = normalized_fault_set(n_, std::move(fault_set), b);
    const ReducedGraphCount count = count_reduced_graphs(topo, faults, b);
    if (!count.exact || *count.exact > budget)
        throw BudgetExceeded("reduced-graph enumeration needs " +
                             (count.exact ? std::to_string(*count.exact)
                                          : "e^" + std::to_string(count.log_count)) +
                             " graphs, budget is " + std::to_string(budget));
    total_ = *count.exact;
    for (NodeId i = 0; i < n_; ++i) {
        if (contains(faults, i)) continue;
        surviving_.push_back(i);
        kept_choices_.push_back(subsets_up_to(good_in_neighbors(topo, faults, i), b));
    }
    cursor_.assign(surviving_.size(), 0);
    // Good in-neighbour lists double as the kept set when nothing is dropped.
    for (std::size_t s = 0; s < surviving_.size(); ++s) {
        auto& choices = kept_choices_[s];
        NodeSet all = good_in_neighbors(topo, faults, surviving_[s]);
        for (auto& drop : choices) drop = set_difference(all, drop);  // store kept sets
    }
}

bool ReducedGraphEnumerator::next(ReducedGraph& out) {
    if (done_) return false;
    out.n = n_;
    out.surviving = surviving_;
    out.in.assign(n_, NodeSet{});
    for (std::size_t s = 0; s < surviving_.size(); ++s)
        out.in[surviving_[s]] = kept_choices_[s][cursor_[s]];

    // Mixed-radix increment.
    std::size_t pos = 0;
    while (pos < cursor_.size()) {
        if (++cursor_[pos] < kept_choices_[pos].size()) break;
        cursor_[pos] = 0;
        ++pos;
    }
    if (pos == cursor_.size()) done_ = true;
    return true;
}

std::vector<ReducedGraph> enumerate_reduced_graphs(const Topology& topo, const NodeSet& fault_set,
                                                   std::size_t b, std::uint64_t budget) {
    ReducedGraphEnumerator it(topo, fault_set, b, budget);
    std::vector<ReducedGraph> out;
    out.reserve(it.total());
    ReducedGraph g;
    while (it.next(g)) out.push_back(g);
    return out;
}

ReducedGraph sample_reduced_graph(const Topology& topo, const NodeSet& fault_set, std::size_t b,
                                  Rng& rng) {
    const NodeSet faults = normalized_fault_set(topo.size(), fault_set, b);
    ReducedGraph g;
    g.n = topo.size();
    g.in.assign(g.n, NodeSet{});
    for (NodeId i = 0; i < g.n; ++i) {
        if (contains(faults, i)) continue;
        g.surviving.push_back(i);
        const NodeSet pool = good_in_neighbors(topo, faults, i);
        // Uniform over subsets of size <= b: pick the size with weight
        // C(|pool|, k), then a uniform k-subset.
        const std::size_t kmax = std::min(b, pool.size());
        std::vector<double> weights;
        for (std::size_t k = 0; k <= kmax; ++k)
            weights.push_back(static_cast<double>(binomial(pool.size(), k)));
        std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
        const std::size_t k = pick(rng.engine());
        NodeSet shuffled = pool;
        std::shuffle(shuffled.begin(), shuffled.end(), rng.engine());
        NodeSet dropped(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(dropped.begin(), dropped.end());
        g.in[i] = set_difference(pool, dropped);
    }
    return g;
}

SourceComponentReport source_components(const ReducedGraph& g) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
    const std::size_t m = g.surviving.size();
    std::vector<std::size_t> index(g.n, m);
    for (std::size_t s = 0; s < m; ++s) index[g.surviving[s]] = s;

    Graph graph(m);
    for (NodeId to : g.surviving)
        for (NodeId from : g.in[to]) {
            if (index[from] == m) throw std::invalid_argument("reduced graph edge from a removed node");
            boost::add_edge(index[from], index[to], graph);
        }

    std::vector<int> component(m);
    const int count = m == 0 ? 0 : boost::strong_components(graph, component.data());

    std::vector<NodeSet> comps(static_cast<std::size_t>(count));
    for (std::size_t s = 0; s < m; ++s) comps[component[s]].push_back(g.surviving[s]);
    // Canonical order: by smallest member (members are already ascending).
    std::vector<std::size_t> order(comps.size());
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return comps[a].front() < comps[b].front(); });
    std::vector<std::size_t> rank(comps.size());
    SourceComponentReport report;
    for (std::size_t r = 0; r < order.size(); ++r) {
        rank[order[r]] = r;
        report.components.push_back(std::move(comps[order[r]]));
    }

    std::vector<bool> has_incoming(report.components.size(), false);
    for (NodeId to : g.surviving)
        for (NodeId from : g.in[to]) {
            const auto cf = rank[component[index[from]]];
            const auto ct = rank[component[index[to]]];
            if (cf != ct) has_incoming[ct] = true;
        }
    for (std::size_t c = 0; c < has_incoming.size(); ++c)
        if (!has_incoming[c]) report.sources.push_back(c);
    return report;
}

std::vector<NodeSet> fault_sets_up_to(std::size_t n, std::size_t b) {
    NodeSet all(n);
    for (NodeId i = 0; i < n; ++i) all[i] = i;
    std::vector<NodeSet> sets = subsets_up_to(all, b);
    std::stable_sort(sets.begin(), sets.end(), [](const NodeSet& a, const NodeSet& c) {
        return a.size() != c.size() ? a.size() < c.size() : a < c;
    });
    return sets;
}

NodeSet maximal_closable_subset(const Topology& topo, const NodeSet& fault_set,
                                const NodeSet& candidates, std::size_t b) {
    const std::size_t n = topo.size();
    std::vector<bool> good(n, true), in_set(n, false);
    for (NodeId f : fault_set) good.at(f) = false;
    for (NodeId c : candidates) {
        if (!good.at(c)) throw std::invalid_argument("closable candidates must be good nodes");
        in_set[c] = true;
    }
    // Greatest fixed point: closable sets are closed under union, so pruning
    // violators until none remain yields the largest one.
    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId v = 0; v < n; ++v) {
            if (!in_set[v]) continue;
            std::size_t outside = 0;
            for (NodeId j : topo.in_neighbors(v))
                if (good[j] && !in_set[j]) ++outside;
            if (outside > b) {
                in_set[v] = false;
                changed = true;
            }
        }
    }
    NodeSet out;
    for (NodeId v = 0; v < n; ++v)
        if (in_set[v]) out.push_back(v);
    return out;
}

namespace {

struct CompactGood {
    NodeSet nodes;                       // compact index -> node id
    std::vector<std::uint64_t> in_mask;  // compact in-neighbour masks over good nodes
    std::uint64_t all = 0;
};

CompactGood compact(const Topology& topo, const NodeSet& faults) {
    CompactGood c;
    std::vector<std::size_t> index(topo.size(), topo.size());
    for (NodeId v = 0; v < topo.size(); ++v)
        if (!contains(faults, v)) {
            index[v] = c.nodes.size();
            c.nodes.push_back(v);
        }
    if (c.nodes.size() > 62) throw BudgetExceeded("closable-set search is limited to 62 good nodes");
    c.in_mask.assign(c.nodes.size(), 0);
    for (std::size_t s = 0; s < c.nodes.size(); ++s)
        for (NodeId j : topo.in_neighbors(c.nodes[s]))
            if (index[j] != topo.size()) c.in_mask[s] |= std::uint64_t{1} << index[j];
    c.all = c.nodes.empty() ? 0 : (std::uint64_t{1} << c.nodes.size()) - 1;
    return c;
}

bool closable(const CompactGood& c, std::uint64_t set, std::size_t b) {
    for (std::uint64_t rest = set; rest != 0; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if (static_cast<std::size_t>(std::popcount(c.in_mask[v] & c.all & ~set)) > b) return false;
    }
    return true;
}

std::uint64_t max_closable_within(const CompactGood& c, std::uint64_t set, std::size_t b) {
    bool changed = true;
    while (changed && set != 0) {
        changed = false;
        for (std::uint64_t rest = set; rest != 0; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            if (static_cast<std::size_t>(std::popcount(c.in_mask[v] & c.all & ~set)) > b) {
                set &= ~(std::uint64_t{1} << v);
                changed = true;
            }
        }
    }
    return set;
}

}  // namespace

bool has_unique_source_everywhere(const Topology& topo, const NodeSet& fault_set, std::size_t b,
                                  unsigned budget_log2) {
    const NodeSet faults = normalized_fault_set(topo.size(), fault_set, b);
    const CompactGood c = compact(topo, faults);
    if (c.nodes.size() > budget_log2)
        throw BudgetExceeded("closable-set search over " + std::to_string(c.nodes.size()) +
                             " good nodes exceeds 2^" + std::to_string(budget_log2));
    for (std::uint64_t s = 1; s <= c.all; ++s) {
        if (!closable(c, s, b)) continue;
        if (max_closable_within(c, c.all & ~s, b) != 0) return false;
    }
    return true;
}

bool check_iabc_achievable(const Topology& topo, std::size_t b, unsigned budget_log2) {
    const std::size_t n = topo.size();
    if (n == 0) throw std::invalid_argument("empty topology");
    if (b >= n) throw std::invalid_argument("b must be smaller than the node count");
    const auto sets = fault_sets_up_to(n, b);
    double visits = 0.0;
    for (const auto& f : sets) visits += std::ldexp(1.0, static_cast<int>(n - f.size()));
    if (visits > std::ldexp(1.0, static_cast<int>(budget_log2)))
        throw BudgetExceeded("achievability check needs ~" + std::to_string(visits) +
                             " subset visits, budget is 2^" + std::to_string(budget_log2));
    for (const auto& f : sets)
        if (!has_unique_source_everywhere(topo, f, b, budget_log2)) return false;
    return true;
}

bool check_iabc_by_enumeration(const Topology& topo, std::size_t b, std::uint64_t budget) {
    if (b >= topo.size()) throw std::invalid_argument("b must be smaller than the node count");
    std::uint64_t used = 0;
    for (const auto& f : fault_sets_up_to(topo.size(), b)) {
        ReducedGraphEnumerator it(topo, f, b, budget - used);
        used += it.total();
        ReducedGraph g;
        while (it.next(g))
            if (source_components(g).source_count() != 1) return false;
    }
    return true;
}

std::vector<SourceCensus> source_census(const Topology& topo, std::size_t b, std::uint64_t budget,
                                        std::uint64_t samples, std::uint64_t seed) {
    std::vector<SourceCensus> out;
    Rng rng(seed, "source-census");
    for (const auto& f : fault_sets_up_to(topo.size(), b)) {
        SourceCensus c;
        c.fault_set = f;
        auto tally = [&c](const ReducedGraph& g) {
            ++c.reduced_graphs;
            if (source_components(g).source_count() == 1)
                ++c.with_one_source;
            else
                ++c.with_many_sources;
        };
        try {
            ReducedGraphEnumerator it(topo, f, b, budget);
            ReducedGraph g;
            while (it.next(g)) tally(g);
        } catch (const BudgetExceeded&) {
            c = SourceCensus{f, 0, 0, 0, true};
            for (std::uint64_t s = 0; s < samples; ++s) tally(sample_reduced_graph(topo, f, b, rng));
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::size_t node_connectivity(const Topology& topo) {
    using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
    using Graph = boost::adjacency_list<
        boost::vecS, boost::vecS, boost::directedS, boost::no_property,
        boost::property<boost::edge_capacity_t, long,
                        boost::property<boost::edge_residual_capacity_t, long,
                                        boost::property<boost::edge_reverse_t,
                                                        Traits::edge_descriptor>>>>;
    const std::size_t n = topo.size();
    if (n <= 1) return 0;

    // Split v into v_in = 2v and v_out = 2v + 1 joined by a unit arc.
    Graph g(2 * n);
    auto capacity = boost::get(boost::edge_capacity, g);
    auto reverse = boost::get(boost::edge_reverse, g);
    auto add = [&](std::size_t u, std::size_t v, long cap) {
        auto e = boost::add_edge(u, v, g).first;
        auto r = boost::add_edge(v, u, g).first;
        capacity[e] = cap;
        capacity[r] = 0;
        reverse[e] = r;
        reverse[r] = e;
    };
    for (NodeId v = 0; v < n; ++v) add(2 * v, 2 * v + 1, 1);
    for (auto [from, to] : topo.edges()) add(2 * from + 1, 2 * to, 1);

    std::size_t best = n - 1;
    for (NodeId s = 0; s < n; ++s)
        for (NodeId t = 0; t < n; ++t) {
            if (s == t) continue;
            const long flow = boost::edmonds_karp_max_flow(g, 2 * s + 1, 2 * t);
            best = std::min(best, static_cast<std::size_t>(flow));
            if (best == 0) return 0;
        }
    return best;
}

}  // namespace byzest
