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

// Directed communication graphs, reduced graphs under a fault set and a link
// budget b, source components, and node connectivity.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "byzest/rng.hpp"

namespace byzest {

using NodeId = std::size_t;
using NodeSet = std::vector<NodeId>;  // sorted, unique

/// Raised when an exact enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a reduced graph has more than one source component.
class MultipleSourceComponents : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

/// Directed graph; edge (j, i) means j is an incoming neighbour of i.
/// Self-loops are never stored: every agent always hears itself.
class Topology {
public:
    Topology() = default;

    static Topology complete(std::size_t n);
    static Topology from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges);
    /// Adds both directions of every pair.
    static Topology undirected(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges);

    std::size_t size() const noexcept { return in_.size(); }
    bool is_complete() const noexcept { return complete_; }
    std::size_t edge_count() const noexcept;

    const NodeSet& in_neighbors(NodeId i) const { return in_.at(i); }
    const NodeSet& out_neighbors(NodeId i) const { return out_.at(i); }
    bool has_edge(NodeId from, NodeId to) const;

    std::vector<std::pair<NodeId, NodeId>> edges() const;

    friend bool operator==(const Topology&, const Topology&) = default;

private:
    std::vector<NodeSet> in_;
    std::vector<NodeSet> out_;
    bool complete_ = false;
};

/// Edge-list text: a header `n <count>` followed by `src dst` lines, or the
/// single line `complete <n>`. Blank lines and `#` comments are ignored.
Topology parse_edge_list(std::istream& in);
Topology load_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Topology& topo);

/// Good-induced subgraph with up to b incoming links dropped per node.
struct ReducedGraph {
    std::size_t n = 0;
    NodeSet surviving;
    /// Kept incoming neighbours, indexed by original node id; empty for faulty nodes.
    std::vector<NodeSet> in;

    std::vector<std::pair<NodeId, NodeId>> edges() const;
    friend bool operator==(const ReducedGraph&, const ReducedGraph&) = default;
};

struct SourceComponentReport {
    /// Strongly connected components, each sorted, ordered by smallest member.
    std::vector<NodeSet> components;
    /// Indices into `components` with no incoming link from outside.
    std::vector<std::size_t> sources;

    std::size_t source_count() const noexcept { return sources.size(); }
};

/// Number of reduced graphs for one fault set, as a product over good nodes
/// of sum_{j <= min(b, indeg)} C(indeg, j).
struct ReducedGraphCount {
    std::optional<std::uint64_t> exact;  // empty when it overflows 64 bits
    double log_count = 0.0;              // natural log, always set
};

ReducedGraphCount count_reduced_graphs(const Topology& topo, const NodeSet& fault_set,
                                       std::size_t b);

/// Single-consumer walk over every reduced graph of (topo, fault_set, b).
class ReducedGraphEnumerator {
public:
    /// Throws BudgetExceeded if the count exceeds `budget`, std::invalid_argument
    /// if |fault_set| > b or an id is out of range.
    ReducedGraphEnumerator(const Topology& topo, NodeSet fault_set, std::size_t b,
                           std::uint64_t budget = kDefaultEnumerationBudget);

    /// Writes the next reduced graph; false once exhausted.
    bool next(ReducedGraph& out);
    std::uint64_t total() const noexcept { return total_; }

private:
    std::size_t n_ = 0;
    NodeSet surviving_;
    std::vector<std::vector<NodeSet>> kept_choices_;  // kept in-neighbours, per surviving node
    std::vector<std::size_t> cursor_;
    std::uint64_t total_ = 0;
    bool done_ = false;
};

/// Collects every reduced graph; convenience over ReducedGraphEnumerator.
std::vector<ReducedGraph> enumerate_reduced_graphs(const Topology& topo, const NodeSet& fault_set,
                                                   std::size_t b,
                                                   std::uint64_t budget = kDefaultEnumerationBudget);

/// One reduced graph drawn uniformly over each node's drop choices.
ReducedGraph sample_reduced_graph(const Topology& topo, const NodeSet& fault_set, std::size_t b,
                                  Rng& rng);

SourceComponentReport source_components(const ReducedGraph& g);

/// Every fault set of size at most b, in lexicographic order (empty set first).
std::vector<NodeSet> fault_sets_up_to(std::size_t n, std::size_t b);

/// Largest subset S of `candidates` (all good) such that every node of S has
/// at most b incoming neighbours among good nodes outside S; such a set can
/// be cut off from the rest by per-node link drops.
NodeSet maximal_closable_subset(const Topology& topo, const NodeSet& fault_set,
                                const NodeSet& candidates, std::size_t b);

/// True iff every reduced graph of every fault set |A| <= b has exactly one
/// source component. Decided through closable sets: a reduced graph with two
/// source components exists iff two disjoint good sets can each be closed
/// off. Exponential in n; throws BudgetExceeded above 2^budget_log2 subset
/// visits.
bool check_iabc_achievable(const Topology& topo, std::size_t b, unsigned budget_log2 = 28);

/// Same question for one fault set.
bool has_unique_source_everywhere(const Topology& topo, const NodeSet& fault_set, std::size_t b,
                                  unsigned budget_log2 = 28);

/// Literal route: enumerate every reduced graph and count source components.
bool check_iabc_by_enumeration(const Topology& topo, std::size_t b,
                               std::uint64_t budget = kDefaultEnumerationBudget);

struct SourceCensus {
    NodeSet fault_set;
    std::uint64_t reduced_graphs = 0;
    std::uint64_t with_one_source = 0;
    std::uint64_t with_many_sources = 0;
    bool approximate = false;  // sampled rather than enumerated
};

/// Per fault set, how many reduced graphs have one vs several source
/// components. Falls back to `samples` uniform draws when enumeration is
/// over budget.
std::vector<SourceCensus> source_census(const Topology& topo, std::size_t b,
                                        std::uint64_t budget = kDefaultEnumerationBudget,
                                        std::uint64_t samples = 10'000, std::uint64_t seed = 1);

/// Minimum over ordered pairs (s, t) of the number of internally
/// vertex-disjoint s->t paths (a direct edge counts as one path).
std::size_t node_connectivity(const Topology& topo);

}  // namespace byzest
