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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace byzest::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kData = BYZEST_TEST_DATA;

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("byzest_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
    fs::create_directories(dir);
    std::ofstream(dir / name) << text;
    return dir / name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate writes one row per round") {
    const fs::path dir = scratch("simulate");
    std::ostringstream out, err;
    SimulateOptions opt;
    opt.config = (kData / "small.ini").string();
    opt.out = dir.string();
    REQUIRE(cmd_simulate(opt, out, err) == kExitOk);
    const std::string csv = slurp(dir / "trace_seed7.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 41);
    CHECK(out.str().find("diverged = false") != std::string::npos);
}

TEST_CASE("simulate is byte-for-byte reproducible") {
    const fs::path dir = scratch("repro");
    std::ostringstream out, err;
    SimulateOptions opt;
    opt.config = (kData / "small.ini").string();
    opt.seed = 21;
    opt.out = (dir / "a").string();
    REQUIRE(cmd_simulate(opt, out, err) == kExitOk);
    opt.out = (dir / "b").string();
    opt.jobs = 4;
    REQUIRE(cmd_simulate(opt, out, err) == kExitOk);
    CHECK(slurp(dir / "a" / "trace_seed21.csv") == slurp(dir / "b" / "trace_seed21.csv"));
}

TEST_CASE("simulate rejects a blown fault budget") {
    std::ostringstream out, err;
    SimulateOptions opt;
    opt.config = (kData / "over_budget.ini").string();
    CHECK(cmd_simulate(opt, out, err) == kExitConfig);
    CHECK(err.str().find("fault budget exceeded") != std::string::npos);

    opt.config = (kData / "does_not_exist.ini").string();
    CHECK(cmd_simulate(opt, out, err) == kExitConfig);
}

TEST_CASE("analyze") {
    const fs::path dir = scratch("analyze");
    std::ostringstream out, err;
    AnalyzeOptions opt;
    opt.config = write_file(dir, "sweep.ini",
                            "[network]\nfaults = 6\nb = 6\n[observation]\nmultiplicity = 7\n")
                     .string();
    REQUIRE(cmd_analyze(opt, out, err) == kExitOk);
    CHECK(out.str().find("assumption1_ok = true") != std::string::npos);
    CHECK(out.str().find("rho = 0.9583333333333334") != std::string::npos);

    std::ostringstream zero;
    opt.config = write_file(dir, "zero.ini", "[model]\nd = 3\n[observation]\nkind = zero\nrows = 2\n")
                     .string();
    REQUIRE(cmd_analyze(opt, zero, err) == kExitOk);
    CHECK(zero.str().find("assumption1_ok = false") != std::string::npos);

    std::ostringstream ring;
    opt.config = write_file(dir, "ring.ini",
                            "[network]\nphi = 8\nfault_ids = 8\nb = 1\ntopology = " +
                                (kData / "ring9.edges").string() +
                                "\n[model]\nd = 3\n[observation]\nrows = 1\nmultiplicity = 2\n")
                     .string();
    REQUIRE(cmd_analyze(opt, ring, err) == kExitOk);
    CHECK(ring.str().find("xi = 160000") != std::string::npos);
    CHECK(ring.str().find("gamma = ") != std::string::npos);
    CHECK(ring.str().find("gamma = n/a") == std::string::npos);
}

TEST_CASE("check-topology") {
    const fs::path dir = scratch("topology");
    std::ostringstream k4, err;
    CheckTopologyOptions opt;
    opt.graph = write_file(dir, "k4.edges", "complete 4\n").string();
    opt.b = 1;
    REQUIRE(cmd_check_topology(opt, k4, err) == kExitOk);
    CHECK(k4.str().find("achievable = true") != std::string::npos);
    CHECK(k4.str().find("node_connectivity = 3") != std::string::npos);
    CHECK(k4.str().find("census {}") != std::string::npos);

    std::ostringstream cliques;
    opt.graph = write_file(dir, "cliques.edges", "n 4\n0 1\n1 0\n2 3\n3 2\n").string();
    opt.b = 0;
    REQUIRE(cmd_check_topology(opt, cliques, err) == kExitOk);
    CHECK(cliques.str().find("achievable = false") != std::string::npos);

    std::ostringstream path;
    opt.graph = write_file(dir, "path.edges", "n 4\n0 1\n1 0\n1 2\n2 1\n2 3\n3 2\n").string();
    opt.b = 1;
    REQUIRE(cmd_check_topology(opt, path, err) == kExitOk);
    CHECK(path.str().find("node_connectivity = 1") != std::string::npos);
    CHECK(path.str().find("connectivity_gate = fail") != std::string::npos);

    std::ostringstream bad;
    opt.graph = write_file(dir, "bad.edges", "0 1\n").string();
    CHECK(cmd_check_topology(opt, bad, err) == kExitConfig);
}

TEST_CASE("figure1 writes curves and refuses to overwrite") {
    const fs::path dir = scratch("figure1");
    std::ostringstream out, err;
    Figure1Options opt;
    opt.out = dir.string();
    opt.seeds = 1;
    opt.rounds = 5;
    REQUIRE(cmd_figure1(opt, out, err) == kExitOk);
    for (int a = 4; a <= 10; ++a) CHECK(fs::exists(dir / ("curve_A" + std::to_string(a) + ".csv")));
    CHECK(fs::exists(dir / "figure1.dat"));
    CHECK(fs::exists(dir / "figure1.gp"));

    std::ostringstream err2;
    CHECK(cmd_figure1(opt, out, err2) == kExitConfig);
    CHECK(err2.str().find("--force") != std::string::npos);
    opt.force = true;
    CHECK(cmd_figure1(opt, out, err2) == kExitOk);
}

}  // TEST_SUITE
