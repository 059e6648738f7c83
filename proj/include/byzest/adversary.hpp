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

// Omniscient Byzantine adversary. Each round it sees every good agent's
// state and pending z-value and writes one message per (faulty sender, good
// receiver) edge. Messages to different receivers may conflict.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "byzest/aggregation.hpp"
#include "byzest/rng.hpp"
#include "byzest/topology.hpp"

namespace byzest {

/// Read-only snapshot handed to a strategy. good_ids is sorted; good_z[i]
/// and good_x[i] belong to good_ids[i].
struct AdversaryView {
    const Vec& theta_star;
    const NodeSet& good_ids;
    const std::vector<Vec>& good_z;
    const std::vector<Vec>& good_x;
    const NodeSet& fault_ids;
    const Topology& topology;
    std::size_t round = 0;
    std::size_t b = 0;
};

/// inbox[i] collects the faulty messages addressed to node i, ordered by
/// sender. Entries for faulty nodes stay empty.
struct AdversaryOutput {
    std::vector<MessageSet> inbox;
    void reset(std::size_t n);
};

class AdversaryStrategy {
public:
    virtual ~AdversaryStrategy() = default;
    virtual std::string name() const = 0;
    virtual void craft(const AdversaryView& view, Rng& rng, AdversaryOutput& out) = 0;
};

/// Fresh N(0, sigma^2) components per (sender, receiver, round).
class GaussianNoiseAttack final : public AdversaryStrategy {
public:
    explicit GaussianNoiseAttack(double sigma);
    std::string name() const override { return "gaussian_noise"; }
    void craft(const AdversaryView& view, Rng& rng, AdversaryOutput& out) override;

private:
    double sigma_;
};

/// Per coordinate k, sends max(good z_k) + margin when direction[k] > 0 and
/// min(good z_k) - margin otherwise. An empty direction means all +1.
class ExtremeCoordinateAttack final : public AdversaryStrategy {
public:
    explicit ExtremeCoordinateAttack(std::vector<int> direction = {}, double margin = 10.0);
    std::string name() const override { return "extreme_coordinate"; }
    void craft(const AdversaryView& view, Rng& rng, AdversaryOutput& out) override;

private:
    std::vector<int> direction_;
    double margin_;
};

/// For each receiver, clamps the target into the range of good values that
/// receiver will see, coordinate by coordinate.
class PullTowardAttack final : public AdversaryStrategy {
public:
    explicit PullTowardAttack(Vec target);
    std::string name() const override { return "pull_toward"; }
    void craft(const AdversaryView& view, Rng& rng, AdversaryOutput& out) override;

private:
    Vec target_;
};

/// Strategy selection as it appears in configuration files.
struct AdversarySpec {
    std::string name = "none";  // none, gaussian_noise, extreme_coordinate, pull_toward
    double sigma = 3.0;
    double margin = 10.0;
    int direction = 1;          // +1, -1, or 0 for alternating signs by coordinate
    double target = 10.0;       // pull_toward target, same value in every coordinate
};

/// nullptr for "none".
std::unique_ptr<AdversaryStrategy> make_strategy(const AdversarySpec& spec, std::size_t d);

}  // namespace byzest
