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

// One good agent: measure, take a unit gradient step, then replace the
// estimate by the coordinate-wise trimmed mean of what it received.

#include <cstddef>

#include "byzest/aggregation.hpp"
#include "byzest/observation.hpp"

namespace byzest {

struct AgentState {
    NodeId id = 0;
    Vec x;
    MeasurementAccumulator acc;
    ObservationModel model;

    AgentState() = default;
    AgentState(NodeId id, ObservationModel model, Vec x0);
};

/// Draws y(t), folds it into the running mean and returns
/// z = x - H^T (H x - ybar). The step size is 1.
Vec local_step(AgentState& state, const Vec& theta_star, Rng& rng);

/// x <- trimmed mean of msgs; msgs must include the agent's own z.
void finalize_round(AgentState& state, const MessageSet& msgs, std::size_t b);

}  // namespace byzest
