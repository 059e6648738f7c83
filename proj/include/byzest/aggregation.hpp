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

// Coordinate-wise trimmed mean.
//
// For each coordinate the received values are sorted non-decreasingly (ties
// broken by sender id), exactly b are removed from each end by position, and
// the rest are averaged. Every implementation here sums the surviving values
// in sorted order, so all paths agree bit for bit.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "byzest/linalg.hpp"
#include "byzest/topology.hpp"

namespace byzest {

/// Fewer than 2b+1 values were offered for trimming.
class AggregationUnderflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Message {
    NodeId sender = 0;
    Vec value;
};

/// Everything one agent received in one round, its own value included.
using MessageSet = std::vector<Message>;

struct TrimmedMean {
    double value = 0.0;
    NodeSet surviving;  // sender ids kept after trimming
};

TrimmedMean trimmed_mean_scalar(std::span<const std::pair<NodeId, double>> values, std::size_t b);

Vec coordinate_trimmed_aggregate(const MessageSet& msgs, std::size_t b);

/// Per-coordinate sorted columns of values every receiver shares (the good
/// agents' broadcasts on a complete graph). Lets each receiver merge in only
/// its private messages instead of re-sorting everything.
class SharedColumns {
public:
    SharedColumns() = default;
    explicit SharedColumns(std::span<const Vec> shared);

    std::size_t count() const noexcept { return count_; }
    std::size_t dim() const noexcept { return columns_.size(); }
    std::span<const double> column(std::size_t k) const { return columns_.at(k); }

private:
    std::size_t count_ = 0;
    std::vector<std::vector<double>> columns_;
};

/// Trimmed aggregate of shared ∪ extra. Equal, bit for bit, to
/// coordinate_trimmed_aggregate over the same multiset.
Vec trimmed_aggregate_with_shared(const SharedColumns& shared, std::span<const Vec> extra,
                                  std::size_t b);

/// Decides whether `aggregate` is a convex combination of `good_values` with
/// every weight at most 1/(phi - b), phi = good_values.size(). The reachable
/// set is an interval whose ends put the weight cap on the smallest
/// (respectively largest) values.
bool lemma1_feasibility_oracle(std::span<const double> good_values, double aggregate,
                               std::size_t b, double tolerance = 1e-9);

/// The interval used by lemma1_feasibility_oracle.
std::pair<double, double> capped_convex_range(std::span<const double> good_values, std::size_t b);

}  // namespace byzest
