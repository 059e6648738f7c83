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


import math

import pytest

import byzest

SMALL = """
[network]
phi = 8
faults = 2
b = 2
[model]
d = 6
[observation]
rows = 3
multiplicity = 3
[adversary]
name = extreme_coordinate
[init]
kind = random
radius = 2
[run]
rounds = 40
seed = 7
"""


def test_trimmed_mean_drops_by_position():
    value, kept = byzest.trimmed_mean([5, 5, 5, 1], 1)
    assert value == 5.0
    assert kept == [0, 1]
    with pytest.raises(byzest.AggregationUnderflow):
        byzest.trimmed_mean([1, 2], 1)


def test_trimmed_aggregate_is_coordinatewise():
    assert byzest.trimmed_aggregate([[0, 0], [1, 2], [2, 4]], 1) == [1, 2]


def test_feasible_range():
    assert byzest.feasible([0.0, 1.0, 2.0], 1.0, 1)
    assert not byzest.feasible([0.0, 1.0, 2.0], 1.9, 1)


def test_rho_for_selection_matrices():
    # Each of 4 agents sees one of 2 coordinates, twice over.
    hs = [[[1.0, 0.0]], [[0.0, 1.0]], [[1.0, 0.0]], [[0.0, 1.0]]]
    assert byzest.rho(hs, 1) == pytest.approx(2 / 3)
    assert byzest.assumption_1(hs, 1)
    assert not byzest.assumption_1(hs, 2)


def test_topology_checks():
    assert byzest.achievable(byzest.Topology.complete(4), 1)
    assert not byzest.achievable(byzest.Topology.complete(3), 1)
    ring = byzest.Topology.parse("n 3\n0 1\n1 2\n2 0\n")
    assert len(ring) == 3
    assert byzest.node_connectivity(ring) == 1
    exact, log_count = byzest.reduced_graph_count(byzest.Topology.complete(4), [3], 1)
    assert exact is not None and math.log(exact) == pytest.approx(log_count)


def test_simulate_converges_and_is_deterministic():
    a = byzest.simulate(SMALL)
    b = byzest.simulate(SMALL)
    assert a == b
    assert a["round"][0] == 0 and a["round"][-1] == 40
    assert not a["diverged"]
    assert a["error_max_linf"][-1] < a["error_max_linf"][0]
    assert byzest.simulate(SMALL, seed=8)["theta_star"] != a["theta_star"]


def test_config_errors_surface():
    with pytest.raises(byzest.ConfigError):
        byzest.simulate(SMALL.replace("faults = 2", "faults = 3"))
    with pytest.raises(byzest.ConfigError):
        byzest.simulate(SMALL + "[run]\nbogus = 1\n")


def test_analyze_reports_rates():
    lines = dict(l.split(" = ", 1) for l in byzest.analyze(SMALL).splitlines())
    assert lines["phi"] == "8"
    assert float(lines["rho"]) == pytest.approx(5 / 6)
    assert lines["assumption1_ok"] == "true"
    assert "noise.bound_C" in byzest.config_keys()
