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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace byzest::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

struct SimulateOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::size_t jobs = 1;
};

struct AnalyzeOptions {
    std::string config;
};

struct CheckTopologyOptions {
    std::string graph;
    std::size_t b = 0;
    std::size_t census_max_nodes = 10;
};

struct Figure1Options {
    std::string out;
    std::size_t seeds = 10;
    std::size_t rounds = 500;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    double noise_variance = 1e-4;
    bool force = false;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err);
int cmd_check_topology(const CheckTopologyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_figure1(const Figure1Options& opt, std::ostream& out, std::ostream& err);

}  // namespace byzest::cli
