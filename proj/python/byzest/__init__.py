# Copyright 2026 The byzest Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Byzantine-resilient distributed estimation with trimmed-mean aggregation."""

from ._byzest import (
    AggregationUnderflow,
    BudgetExceeded,
    ConfigError,
    MultipleSourceComponents,
    Topology,
    __version__,
    achievable,
    analyze,
    assumption_1,
    config_keys,
    feasible,
    node_connectivity,
    reduced_graph_count,
    rho,
    simulate,
    trimmed_aggregate,
    trimmed_mean,
)

__all__ = [
    "AggregationUnderflow",
    "BudgetExceeded",
    "ConfigError",
    "MultipleSourceComponents",
    "Topology",
    "__version__",
    "achievable",
    "analyze",
    "assumption_1",
    "config_keys",
    "feasible",
    "node_connectivity",
    "reduced_graph_count",
    "rho",
    "simulate",
    "trimmed_aggregate",
    "trimmed_mean",
]
