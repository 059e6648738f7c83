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

#include "byzest/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace byzest {
namespace {

void require_enough(std::size_t count, std::size_t b) {
    if (count < 2 * b + 1)
        throw AggregationUnderflow("trimming b = " + std::to_string(b) + " needs at least " +
                                   std::to_string(2 * b + 1) + " values, got " +
                                   std::to_string(count));
}

}  // namespace

TrimmedMean trimmed_mean_scalar(std::span<const std::pair<NodeId, double>> values, std::size_t b) {
    require_enough(values.size(), b);
    std::vector<std::pair<double, NodeId>> sorted;
    sorted.reserve(values.size());
    for (auto [id, v] : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite value offered to trimmed mean");
        sorted.emplace_back(v, id);
    }
    std::sort(sorted.begin(), sorted.end());

    TrimmedMean out;
    double sum = 0.0;
    const std::size_t end = sorted.size() - b;
    for (std::size_t p = b; p < end; ++p) {
        sum += sorted[p].first;
        out.surviving.push_back(sorted[p].second);
    }
    out.value = sum / static_cast<double>(end - b);
    std::sort(out.surviving.begin(), out.surviving.end());
    return out;
}

Vec coordinate_trimmed_aggregate(const MessageSet& msgs, std::size_t b) {
    require_enough(msgs.size(), b);
    const std::size_t d = msgs.front().value.size();
    for (const auto& m : msgs)
        if (m.value.size() != d) throw std::invalid_argument("messages of differing dimension");

    Vec out(d);
    std::vector<double> column(msgs.size());
    const std::size_t end = msgs.size() - b;
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j < msgs.size(); ++j) {
            column[j] = msgs[j].value[k];
            if (!std::isfinite(column[j]))
                throw std::invalid_argument("non-finite message from sender " +
                                            std::to_string(msgs[j].sender));
        }
        std::sort(column.begin(), column.end());
        double sum = 0.0;
        for (std::size_t p = b; p < end; ++p) sum += column[p];
        out[k] = sum / static_cast<double>(end - b);
    }
    return out;
}

SharedColumns::SharedColumns(std::span<const Vec> shared) : count_(shared.size()) {
    if (shared.empty()) return;
    const std::size_t d = shared.front().size();
    columns_.assign(d, std::vector<double>(shared.size()));
    for (std::size_t j = 0; j < shared.size(); ++j) {
        if (shared[j].size() != d) throw std::invalid_argument("messages of differing dimension");
        for (std::size_t k = 0; k < d; ++k) columns_[k][j] = shared[j][k];
    }
    for (auto& c : columns_) {
        for (double v : c)
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite shared message");
        std::sort(c.begin(), c.end());
    }
}

Vec trimmed_aggregate_with_shared(const SharedColumns& shared, std::span<const Vec> extra,
                                  std::size_t b) {
    const std::size_t total = shared.count() + extra.size();
    require_enough(total, b);
    const std::size_t d = shared.count() > 0 ? shared.dim() : extra.front().size();
    for (const auto& v : extra)
        if (v.size() != d) throw std::invalid_argument("messages of differing dimension");

    Vec out(d);
    std::vector<double> mine(extra.size());
    const std::size_t end = total - b;
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j < extra.size(); ++j) {
            mine[j] = extra[j][k];
            if (!std::isfinite(mine[j])) throw std::invalid_argument("non-finite private message");
        }
        std::sort(mine.begin(), mine.end());
        const std::span<const double> common =
            shared.count() > 0 ? shared.column(k) : std::span<const double>{};

        // Walk the merged order, summing positions [b, total - b).
        std::size_t i = 0, j = 0;
        double sum = 0.0;
        for (std::size_t p = 0; p < end; ++p) {
            double v;
            if (j == mine.size() || (i < common.size() && common[i] <= mine[j]))
                v = common[i++];
            else
                v = mine[j++];
            if (p >= b) sum += v;
        }
        out[k] = sum / static_cast<double>(end - b);
    }
    return out;
}

std::pair<double, double> capped_convex_range(std::span<const double> good_values, std::size_t b) {
    const std::size_t phi = good_values.size();
    if (phi == 0) throw std::invalid_argument("no good values");
    if (b >= phi) throw std::invalid_argument("b must be smaller than the number of good values");
    std::vector<double> sorted(good_values.begin(), good_values.end());
    std::sort(sorted.begin(), sorted.end());

    const double cap = 1.0 / static_cast<double>(phi - b);
    auto fill = [&](auto first, auto last) {
        double mass = 1.0, acc = 0.0;
        for (auto it = first; it != last && mass > 0.0; ++it) {
            const double w = std::min(cap, mass);
            acc += w * *it;
            mass -= w;
        }
        return acc;
    };
    return {fill(sorted.begin(), sorted.end()), fill(sorted.rbegin(), sorted.rend())};
}

bool lemma1_feasibility_oracle(std::span<const double> good_values, double aggregate,
                               std::size_t b, double tolerance) {
    const auto [lo, hi] = capped_convex_range(good_values, b);
    double scale = 1.0;
    for (double v : good_values) scale = std::max(scale, std::abs(v));
    const double slack = tolerance * scale;
    return aggregate >= lo - slack && aggregate <= hi + slack;
}

}  // namespace byzest
