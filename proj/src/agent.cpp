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


#include "byzest/agent.hpp"

#include <stdexcept>
#include <utility>

namespace byzest {

AgentState::AgentState(NodeId agent, ObservationModel m, Vec x0)
    : id(agent), x(std::move(x0)), acc(m.rows()), model(std::move(m)) {
    if (x.size() != model.dim())
        throw std::invalid_argument("initial estimate has the wrong dimension");
}

Vec local_step(AgentState& state, const Vec& theta_star, Rng& rng) {
    state.acc.add(sample_measurement(state.model, theta_star, rng));
    return state.x - empirical_gradient(state.model, state.acc, state.x);
}

void finalize_round(AgentState& state, const MessageSet& msgs, std::size_t b) {
    state.x = coordinate_trimmed_aggregate(msgs, b);
}

}  // namespace byzest
