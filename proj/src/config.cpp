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


#include "byzest/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace byzest {
namespace {

namespace pt = boost::property_tree;

const std::vector<ConfigKey> kSchema = {
    {"network.phi", "int", "30", "number of good agents"},
    {"network.b", "int", "0", "trimming parameter, upper bound on faulty agents"},
    {"network.faults", "int", "0", "number of faulty agents; they take the highest ids"},
    {"network.fault_ids", "list", "", "explicit faulty ids, comma separated (excludes faults)"},
    {"network.topology", "string", "complete",
     "'complete' or the path of an edge-list file"},
    {"model.d", "int", "50", "parameter dimension"},
    {"model.theta_range", "float", "1", "theta* components uniform in [-range, range]"},
    {"observation.kind", "string", "selection", "selection, identity or zero"},
    {"observation.rows", "int", "20", "rows per agent (selection, zero)"},
    {"observation.multiplicity", "int", "1", "agents observing each coordinate (selection)"},
    {"noise.kind", "string", "zero", "zero, uniform_box or truncated_gaussian"},
    {"noise.variance", "float", "0", "per-component noise variance"},
    {"noise.bound_C", "float", "0", "norm bound for truncated_gaussian noise"},
    {"adversary.name", "string", "none",
     "none, gaussian_noise, extreme_coordinate or pull_toward"},
    {"adversary.sigma", "float", "3", "standard deviation for gaussian_noise"},
    {"adversary.margin", "float", "10", "overshoot beyond the good range (extreme_coordinate)"},
    {"adversary.direction", "int", "1", "1, -1, or 0 for alternating signs (extreme_coordinate)"},
    {"adversary.target", "float", "10", "target value in every coordinate (pull_toward)"},
    {"init.kind", "string", "zero", "zero or random"},
    {"init.radius", "float", "1", "l_inf radius for random initial estimates"},
    {"run.rounds", "int", "500", "number of rounds T"},
    {"run.seed", "int", "1", "master seed"},
    {"run.epsilon", "float", "0", "epsilon used in the logged error envelope"},
    {"run.agent_cadence", "int", "0", "per-agent error columns every k rounds; 0 disables"},
    {"run.label", "string", "", "label used in output file names"},
    {"output.dir", "string", ".", "directory for trace files"},
    {"output.prefix", "string", "trace", "trace file name prefix"},
};

class Reader {
public:
    explicit Reader(std::map<std::string, std::string> values) : values_(std::move(values)) {}

    std::optional<std::string> raw(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }

    std::string str(const std::string& key) const {
        if (auto v = raw(key)) return *v;
        return default_of(key);
    }

    std::uint64_t uint(const std::string& key) const { return parse_uint(key, str(key)); }

    long long sint(const std::string& key) const {
        const std::string s = str(key);
        long long v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
            throw ConfigError(key + ": expected an integer, got '" + s + "'");
        return v;
    }

    double real(const std::string& key) const {
        const std::string s = str(key);
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
            throw ConfigError(key + ": expected a number, got '" + s + "'");
        return v;
    }

    static std::uint64_t parse_uint(const std::string& key, const std::string& s) {
        std::uint64_t v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
            throw ConfigError(key + ": expected a non-negative integer, got '" + s + "'");
        return v;
    }

private:
    static std::string default_of(const std::string& key) {
        for (const auto& k : kSchema)
            if (k.key == key) return k.default_value;
        throw std::logic_error("key missing from schema: " + key);
    }

    std::map<std::string, std::string> values_;
};

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

NodeSet parse_id_list(const std::string& key, const std::string& text) {
    NodeSet ids;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        ids.push_back(Reader::parse_uint(key, item));
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw ConfigError(key + ": duplicate id");
    return ids;
}

}  // namespace

const std::vector<ConfigKey>& config_schema() { return kSchema; }

std::string describe_config_schema() {
    std::ostringstream out;
    out << "Config file keys ([section] then name = value):\n";
    for (const auto& k : kSchema) {
        out << "  " << k.key << " (" << k.type;
        if (!k.default_value.empty()) out << ", default " << k.default_value;
        out << "): " << k.doc << '\n';
    }
    return out.str();
}

ConfigFile parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }

    std::map<std::string, std::string> values;
    for (const auto& [section, body] : tree) {
        if (body.empty())
            throw ConfigError("key '" + section + "' must live inside a [section]");
        for (const auto& [name, leaf] : body) {
            const std::string key = section + "." + name;
            const bool known = std::any_of(kSchema.begin(), kSchema.end(),
                                           [&](const ConfigKey& k) { return k.key == key; });
            if (!known) throw ConfigError("unknown config key '" + key + "'");
            values[key] = trim(leaf.data());
        }
    }
    const Reader r(std::move(values));

    ConfigFile cfg;
    SimulationConfig& s = cfg.sim;
    s.phi = r.uint("network.phi");
    s.b = r.uint("network.b");
    s.d = r.uint("model.d");
    s.theta_range = r.real("model.theta_range");

    const std::string topo = r.str("network.topology");
    if (topo != "complete") {
        std::filesystem::path p(topo);
        if (p.is_relative()) p = base_dir / p;
        try {
            s.topology = load_edge_list(p);
        } catch (const std::exception& e) {
            throw ConfigError("network.topology: " + std::string(e.what()));
        }
    }

    const bool has_ids = r.raw("network.fault_ids").has_value();
    const bool has_count = r.raw("network.faults").has_value();
    if (has_ids && has_count)
        throw ConfigError("give either network.faults or network.fault_ids, not both");
    if (has_ids) {
        s.fault_ids = parse_id_list("network.fault_ids", r.str("network.fault_ids"));
    } else {
        const std::size_t count = r.uint("network.faults");
        const std::size_t n = s.topology ? s.topology->size() : s.phi + count;
        if (count > n) throw ConfigError("network.faults exceeds the number of nodes");
        for (std::size_t k = n - count; k < n; ++k) s.fault_ids.push_back(k);
    }
    if (s.topology) {
        if (s.fault_ids.size() > s.topology->size())
            throw ConfigError("more faulty ids than nodes");
        const std::size_t phi = s.topology->size() - s.fault_ids.size();
        if (r.raw("network.phi") && phi != s.phi)
            throw ConfigError("network.phi disagrees with the topology and fault ids");
        s.phi = phi;
    }

    const std::string obs = r.str("observation.kind");
    if (obs == "selection")
        s.observation.kind = ObservationSpec::Kind::Selection;
    else if (obs == "identity")
        s.observation.kind = ObservationSpec::Kind::Identity;
    else if (obs == "zero")
        s.observation.kind = ObservationSpec::Kind::Zero;
    else
        throw ConfigError("observation.kind: unknown kind '" + obs + "'");
    s.observation.rows = r.uint("observation.rows");
    s.observation.multiplicity = r.uint("observation.multiplicity");

    try {
        s.noise.kind = parse_noise_kind(r.str("noise.kind"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("noise.kind: ") + e.what());
    }
    s.noise.variance = r.real("noise.variance");
    s.noise.bound_C = r.real("noise.bound_C");
    if (r.raw("noise.bound_C") && s.noise.kind != NoiseKind::TruncatedGaussian)
        throw ConfigError("noise.bound_C applies to truncated_gaussian noise only");

    s.adversary.name = r.str("adversary.name");
    s.adversary.sigma = r.real("adversary.sigma");
    s.adversary.margin = r.real("adversary.margin");
    s.adversary.direction = static_cast<int>(r.sint("adversary.direction"));
    s.adversary.target = r.real("adversary.target");

    const std::string init = r.str("init.kind");
    if (init == "zero")
        s.init.kind = InitSpec::Kind::Zero;
    else if (init == "random")
        s.init.kind = InitSpec::Kind::Random;
    else
        throw ConfigError("init.kind: unknown kind '" + init + "'");
    s.init.radius = r.real("init.radius");

    s.rounds = r.uint("run.rounds");
    s.seed = r.uint("run.seed");
    s.epsilon = r.real("run.epsilon");
    s.agent_cadence = r.uint("run.agent_cadence");
    s.label = r.str("run.label");

    std::filesystem::path out_dir(r.str("output.dir"));
    cfg.output_dir = out_dir.is_relative() ? base_dir / out_dir : out_dir;
    cfg.output_prefix = r.str("output.prefix");
    if (cfg.output_prefix.empty() ||
        cfg.output_prefix.find_first_of("/\\") != std::string::npos)
        throw ConfigError("output.prefix must be a plain, non-empty file name");

    // Budget violations are reported by validate(); so is everything else
    // that depends on several keys at once.
    validate(s);
    return cfg;
}

ConfigFile load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in, path.parent_path().empty() ? "." : path.parent_path());
}

std::string trace_file_name(const std::string& prefix, const std::string& label,
                            std::uint64_t seed) {
    std::string name = prefix;
    if (!label.empty()) name += "_" + label;
    return name + "_seed" + std::to_string(seed) + ".csv";
}

}  // namespace byzest
