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

// INI-style experiment files. Every accepted key is listed in
// config_schema(); anything else is rejected.
//
//   [network]
//   phi = 30
//   faults = 6
//   b = 6
//   [observation]
//   kind = selection
//   rows = 20
//   multiplicity = 7

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "byzest/engine.hpp"

namespace byzest {

struct ConfigKey {
    std::string key;  // section.name
    std::string type;
    std::string default_value;
    std::string doc;
};

const std::vector<ConfigKey>& config_schema();

/// Schema rendered as help text, one key per line.
std::string describe_config_schema();

struct ConfigFile {
    SimulationConfig sim;
    std::filesystem::path output_dir = ".";
    std::string output_prefix = "trace";
};

/// Relative paths inside the file resolve against base_dir. Throws ConfigError.
ConfigFile parse_config(std::istream& in, const std::filesystem::path& base_dir = ".");
ConfigFile load_config(const std::filesystem::path& path);

/// `<prefix>[_<label>]_seed<seed>.csv`
std::string trace_file_name(const std::string& prefix, const std::string& label,
                            std::uint64_t seed);

}  // namespace byzest
