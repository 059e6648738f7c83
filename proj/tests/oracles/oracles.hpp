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

// Brute-force reference implementations used only by the tests. They work
// on plain std::vector data and share no code with the library routines
// they check.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "byzest/topology.hpp"

namespace oracle {

/// Sort a copy, drop b from each end, average the rest.
double trimmed_mean(std::vector<double> values, std::size_t b);

/// Product over good nodes of the number of subsets of their good in-links
/// of size at most b, counted by walking every bitmask. Refuses n > 6.
std::uint64_t reduced_graph_count(const byzest::Topology& topo, const byzest::NodeSet& faults,
                                  std::size_t b);

using Matrix = std::vector<std::vector<double>>;

/// (1/t) sum_s H^T (H x - y(s)) from the stored history.
std::vector<double> gradient_full_history(const Matrix& H,
                                          const std::vector<std::vector<double>>& y_history,
                                          const std::vector<double>& x);

/// (1/t) sum_s 0.5 ||H x - y(s)||^2
double objective_full_history(const Matrix& H, const std::vector<std::vector<double>>& y_history,
                              const std::vector<double>& x);

}  // namespace oracle
