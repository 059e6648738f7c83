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

#include <algorithm>
#include <cmath>

#include "byzest/aggregation.hpp"
#include "byzest/rng.hpp"

using namespace byzest;

namespace {

std::vector<std::pair<NodeId, double>> labelled(const std::vector<double>& v) {
    std::vector<std::pair<NodeId, double>> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(i, v[i]);
    return out;
}

MessageSet messages(const std::vector<Vec>& values) {
    MessageSet out;
    for (std::size_t i = 0; i < values.size(); ++i) out.push_back({i, values[i]});
    return out;
}

}  // namespace

TEST_SUITE("aggregation") {

TEST_CASE("scalar trimmed mean examples") {
    const auto r = trimmed_mean_scalar(labelled({1, 2, 3, 4, 5}), 1);
    CHECK(r.value == 3.0);
    CHECK(r.surviving == NodeSet{1, 2, 3});
    CHECK(trimmed_mean_scalar(labelled({2.5, 2.5, 2.5}), 1).value == 2.5);
    CHECK(trimmed_mean_scalar(labelled({1, 2, 6}), 0).value == 3.0);

    // Positional removal: the 1 and the last 5 in (value, id) order go.
    const auto dup = trimmed_mean_scalar(labelled({5, 5, 5, 1}), 1);
    CHECK(dup.value == 5.0);
    CHECK(dup.surviving == NodeSet{0, 1});
    CHECK_THROWS_AS(trimmed_mean_scalar(labelled({1, 2}), 1), AggregationUnderflow);
}

TEST_CASE("coordinate-wise aggregate examples") {
    CHECK(coordinate_trimmed_aggregate(messages({Vec{0, 0}, Vec{1, 2}, Vec{2, 4}}), 1) == Vec{1, 2});
    const Vec one = coordinate_trimmed_aggregate(messages({Vec{4}, Vec{1}, Vec{9}, Vec{3}, Vec{7}}), 1);
    CHECK(one[0] == trimmed_mean_scalar(labelled({4, 1, 9, 3, 7}), 1).value);

    MessageSet attacked = messages({Vec{0.1, -0.3}, Vec{0.5, 0.2}, Vec{-0.2, 0.4}, Vec{0.3, 0.0}});
    attacked.push_back({9, Vec{1e6, -1e6}});
    const Vec agg = coordinate_trimmed_aggregate(attacked, 1);
    CHECK(agg[0] >= -0.2);
    CHECK(agg[0] <= 0.5);
    CHECK(agg[1] >= -0.3);
    CHECK(agg[1] <= 0.4);
}

TEST_CASE("lemma 1 feasibility oracle examples") {
    const std::vector<double> good = {0, 0, 9};
    const auto [lo, hi] = capped_convex_range(good, 1);
    CHECK(lo == 0.0);
    CHECK(hi == 4.5);
    CHECK(lemma1_feasibility_oracle(good, 4.5, 1));
    CHECK_FALSE(lemma1_feasibility_oracle(good, 4.6, 1));
    CHECK_FALSE(lemma1_feasibility_oracle(good, 9.5, 0));
    const std::vector<double> v = {1, 4, 2, 8, 3};
    CHECK(lemma1_feasibility_oracle(v, (1 + 4 + 2 + 8 + 3) / 5.0, 2));
}

TEST_CASE("permutation invariance") {
    Rng rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t b = rng.next() % 4, count = 2 * b + 1 + rng.next() % 6, d = 1 + rng.next() % 4;
        std::vector<Vec> vals(count, Vec(d));
        for (auto& v : vals)
            for (auto& x : v) x = std::round(rng.uniform(-5, 5));  // plenty of ties
        MessageSet msgs = messages(vals);
        const Vec ref = coordinate_trimmed_aggregate(msgs, b);
        std::shuffle(msgs.begin(), msgs.end(), rng.engine());
        REQUIRE(coordinate_trimmed_aggregate(msgs, b) == ref);
    }
}

TEST_CASE("b extremes on both sides leave the trimmed mean unchanged") {
    Rng rng(6);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t b = 1 + rng.next() % 5, n = 2 * b + 1 + rng.next() % 10;
        std::vector<double> good(n);
        for (auto& x : good) x = rng.uniform(-10, 10);
        std::vector<double> all = good;
        const double lo = *std::min_element(good.begin(), good.end());
        const double hi = *std::max_element(good.begin(), good.end());
        for (std::size_t k = 0; k < b; ++k) {
            all.push_back(hi + 1 + rng.uniform(0, 1e6));
            all.push_back(lo - 1 - rng.uniform(0, 1e6));
        }
        REQUIRE(trimmed_mean_scalar(labelled(all), b).value ==
                trimmed_mean_scalar(labelled(good), 0).value);
        REQUIRE(trimmed_mean_scalar(labelled(all), 2 * b).value ==
                trimmed_mean_scalar(labelled(good), b).value);
    }
}

TEST_CASE("shared-column path is bit-identical to the generic path") {
    Rng rng(7);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t b = rng.next() % 4, d = 1 + rng.next() % 6;
        const std::size_t shared_n = 1 + rng.next() % 12, extra_n = rng.next() % 5;
        if (shared_n + extra_n < 2 * b + 1) continue;
        std::vector<Vec> shared(shared_n, Vec(d)), extra(extra_n, Vec(d));
        for (auto* group : {&shared, &extra})
            for (auto& v : *group)
                for (auto& x : v) x = rng.uniform(0, 1) < 0.2 ? 1.0 : rng.normal(0, 3);
        MessageSet all = messages(shared);
        for (const auto& v : extra) all.push_back({99, v});
        const Vec generic = coordinate_trimmed_aggregate(all, b);
        const Vec fast = trimmed_aggregate_with_shared(SharedColumns(shared), extra, b);
        REQUIRE(generic == fast);
    }
}

TEST_CASE("aggregate stays in the good range when at most b senders lie") {
    Rng rng(8);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t b = rng.next() % 4, faulty = rng.next() % (b + 1);
        const std::size_t good_n = 2 * b + 1 - faulty + rng.next() % 5;
        std::vector<double> good(good_n);
        MessageSet msgs;
        for (std::size_t i = 0; i < good_n; ++i) {
            good[i] = rng.uniform(-1, 1);
            msgs.push_back({i, Vec{good[i]}});
        }
        for (std::size_t f = 0; f < faulty; ++f) msgs.push_back({100 + f, Vec{rng.normal(0, 1e4)}});
        const double agg = coordinate_trimmed_aggregate(msgs, b)[0];
        REQUIRE(agg >= *std::min_element(good.begin(), good.end()));
        REQUIRE(agg <= *std::max_element(good.begin(), good.end()));
        if (good_n > b) REQUIRE(lemma1_feasibility_oracle(good, agg, b));
    }
}

TEST_CASE("non-finite and mismatched inputs are rejected") {
    CHECK_THROWS_AS(coordinate_trimmed_aggregate(messages({Vec{1}, Vec{NAN}, Vec{2}}), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(coordinate_trimmed_aggregate(messages({Vec{1}, Vec{1, 2}}), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(coordinate_trimmed_aggregate(messages({Vec{1}, Vec{2}}), 1),
                    AggregationUnderflow);
}

}  // TEST_SUITE
