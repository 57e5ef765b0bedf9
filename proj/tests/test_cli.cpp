// Copyright 2026 The CompShadow Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "compshadow/config.hpp"
#include "compshadow/runner.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace compshadow;

namespace {

ExperimentConfig config_for(const std::string& task, int n_min, int n_max) {
    ExperimentConfig c;
    c.task = task;
    c.n_min = n_min;
    c.n_max = n_max;
    return c;
}

const Artifact& artifact(const RunOutcome& out, const std::string& name) {
    for (const auto& a : out.artifacts) {
        if (a.name == name) return a;
    }
    throw std::runtime_error("missing artifact " + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(COMPSHADOW_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
    const std::string text = R"({
  "task": "mitigate-bench",
  "n": "2..6",
  "shots": 1000,
  "repeats": 20,
  "seed": 42,
  "noise": {"e1": 0.0016, "e2": 0.006, "confusion": "synthetic-correlated"},
  "params": {"epochs": 30}
})";
    const auto c = parse_config(text);
    CHECK(c.task == "mitigate-bench");
    CHECK(*c.n_min == 2);
    CHECK(*c.n_max == 6);
    CHECK(*c.shots == 1000);
    CHECK(*c.repeats == 20);
    CHECK(c.seed == 42);
    CHECK(*c.noise.e2 == 0.006);
    CHECK(*c.epochs == 30);
    CHECK(parse_config(R"({"n": [3, 5]})", "transmit").n_max == 5);
    CHECK(parse_config(R"({"n": 4})", "populations").n_min == 4);
}

TEST_CASE("config diagnostics name the field and line") {
    auto error_of = [](const std::string& text, const std::string& task = "validate") {
        try {
            parse_config(text, task);
        } catch (const ConfigError& e) {
            return std::make_pair(e.field(), e.line());
        }
        return std::make_pair(std::string("<none>"), -1);
    };
    CHECK(error_of("{\n  \"n\": 4,\n  \"noise\": {\n    \"t2\": 1\n  }\n}") ==
          std::make_pair(std::string("noise.t2"), 4));
    CHECK(error_of("{\n  \"shots\": -1\n}") == std::make_pair(std::string("shots"), 2));
    CHECK(error_of("{\n  \"n\": \"a..b\"\n}") == std::make_pair(std::string("n"), 2));
    CHECK(error_of("{\n\n  \"params\": {\"xi\": 3}\n}") == std::make_pair(std::string("params.xi"), 3));
    CHECK(error_of("{\"format\": \"xml\"}").first == "format");
    CHECK(error_of("{\"task\": \"entropy\"}", "transmit").first == "task");
    CHECK(error_of("{\"n\": 4,,}").second == 1);
    CHECK(error_of("{\"bogus\": 1}").first == "bogus");
    CHECK(error_of("{\"n\": 4}", "").first == "task");
    CHECK(error_of("{\"params\": {\"state\": \"cat\"}}").first == "params.state");
    CHECK(error_of("{\"params\": {\"pauli\": \"XQ\"}}").first == "params.pauli");
}

TEST_CASE("config hash is canonical") {
    const auto a = parse_config(R"({"n": 4, "seed": 3, "noise": {"e1": 0.01}})", "populations");
    const auto b = parse_config(R"({"noise": {"e1": 0.01}, "seed": 3, "n": 4})", "populations");
    CHECK(a.to_json() == b.to_json());
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    auto c = a;
    c.seed = 4;
    CHECK(c.hash() != a.hash());
    CHECK(parse_config(a.to_json() == "" ? "{}" : R"({"n": 4})", "populations").n_max == 4);
}

TEST_CASE("validate task passes and reports every check") {
    const auto out = run_experiment(config_for("validate", 2, 5));
    CHECK(out.exit_code == kExitOk);
    const std::string& csv = artifact(out, "validate.csv").content;
    CHECK(csv.rfind("check,n,pass,deviation\n", 0) == 0);
    CHECK(csv.find(",0,") == std::string::npos);
    CHECK(out.report.find("FAIL") == std::string::npos);
}

TEST_CASE("property: artifacts are deterministic and independent of job count") {
    std::vector<ExperimentConfig> configs;
    configs.push_back(config_for("populations", 3, 3));
    configs.back().shots = 500;
    configs.back().repeats = 3;
    configs.push_back(config_for("estimate-pop", 3, 3));
    configs.back().repeats = 4;
    configs.push_back(config_for("expectation", 3, 3));
    configs.back().pauli = "XZY";
    configs.push_back(config_for("mitigate-bench", 3, 4));
    configs.back().repeats = 5;
    configs.back().shots = 500;
    configs.back().backend = "trajectory";
    configs.push_back(config_for("transmit", 3, 5));
    configs.back().trials = 20;
    configs.back().target_err = 0.05;
    configs.push_back(config_for("schedule-bench", 4, 4));
    configs.back().repeats = 5;
    for (auto c : configs) {
        c.jobs = 1;
        const auto first = run_experiment(c);
        c.jobs = 3;
        const auto second = run_experiment(c);
        REQUIRE(first.artifacts.size() == second.artifacts.size());
        for (size_t i = 0; i < first.artifacts.size(); ++i) {
            CHECK(first.artifacts[i].name == second.artifacts[i].name);
            CHECK(first.artifacts[i].content == second.artifacts[i].content);
        }
        c.seed += 1;
        const auto third = run_experiment(c);
        CHECK(third.artifacts[0].content != first.artifacts[0].content);
    }
}

TEST_CASE("jsonl output carries the same records") {
    auto c = config_for("expectation", 2, 2);
    c.repeats = 3;
    c.format = "jsonl";
    const auto out = run_experiment(c);
    std::istringstream lines(artifact(out, "expectation.jsonl").content);
    int count = 0;
    for (std::string line; std::getline(lines, line); ++count) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j["n"] == 2);
        CHECK(j["pauli"] == "ZZ");
        CHECK(j.contains("estimate"));
    }
    CHECK(count == 3);
}

TEST_CASE("transmit artifacts follow the documented columns") {
    auto c = config_for("transmit", 3, 5);
    c.trials = 20;
    c.target_err = 0.05;
    const auto out = run_experiment(c);
    const std::string& csv = artifact(out, "transmit.csv").content;
    CHECK(csv.rfind("protocol,n,n_c,r,seed,survivors,estimate,error,flag\n", 0) == 0);
    const auto summary = nlohmann::json::parse(artifact(out, "transmit_summary.json").content);
    CHECK(summary["direct"]["fit"] == "exponential");
    CHECK(summary["compshadow"]["required"].size() == 3);
}

TEST_CASE("manifest") {
    const auto c = config_for("validate", 2, 2);
    const auto out = run_experiment(c);
    const auto m = nlohmann::json::parse(manifest_json(c, out, 1.5, "2026-01-01T00:00:00Z"));
    CHECK(m["config_hash"] == c.hash());
    CHECK(m["versions"]["compshadow"] == version_string());
    CHECK(m["wall_time_s"] == 1.5);
    CHECK(m["artifacts"][0] == "validate.csv");
}

TEST_CASE("command-line tool exit codes and reproducibility") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "compshadow_cli_test";
    fs::remove_all(dir);
    const std::string out = " --out " + dir.string();
    CHECK(run_cli("validate --n 2..4" + out) == kExitOk);
    CHECK(fs::exists(dir / "validate.csv"));
    CHECK(fs::exists(dir / "validate.manifest.json"));

    CHECK(run_cli("populations --n 3 --shots 200 --seed 9" + out + "/a") == kExitOk);
    CHECK(run_cli("populations --n 3 --shots 200 --seed 9 --jobs 2" + out + "/b") == kExitOk);
    CHECK(slurp(dir / "a" / "populations.csv") == slurp(dir / "b" / "populations.csv"));

    {
        std::ofstream cfg(dir / "bad.json");
        cfg << "{\n  \"n\": 3,\n  \"noise\": {\"e3\": 0.1}\n}\n";
    }
    CHECK(run_cli("populations --config " + (dir / "bad.json").string() + out) == kExitConfigError);
    CHECK(run_cli("transmit --n 3..x" + out) == kExitConfigError);
    CHECK(run_cli("transmit --format xml" + out) == kExitConfigError);
    CHECK(run_cli("frobnicate" + out) == kExitConfigError);

    {
        std::ofstream cfg(dir / "good.json");
        cfg << "{\n  \"n\": 3,\n  \"shots\": 100,\n  \"seed\": 5\n}\n";
    }
    CHECK(run_cli("populations --config " + (dir / "good.json").string() + " --shots 300" + out + "/c") == kExitOk);
    const auto manifest = nlohmann::json::parse(slurp(dir / "c" / "populations.manifest.json"));
    CHECK(manifest["config"]["shots"] == 300);
    CHECK(manifest["config"]["seed"] == 5);

    const std::string env_dir = (dir / "env").string();
    const std::string env_cmd = "COMPSHADOW_OUT_DIR=" + env_dir + " " + COMPSHADOW_CLI_PATH +
                                " validate --n 2 > /dev/null 2>&1";
    CHECK(std::system(env_cmd.c_str()) == 0);
    CHECK(fs::exists(fs::path(env_dir) / "validate.csv"));
    fs::remove_all(dir);
}

}  // TEST_SUITE
