// Copyright 2026 The CompShadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace compshadow {

/// Invalid configuration. `field` is a dotted key path, `line` is 1-based
/// (0 when the value did not come from a file).
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string field, int line, const std::string& message);
    const std::string& field() const { return field_; }
    int line() const { return line_; }

   private:
    std::string field_;
    int line_;
};

inline const std::vector<std::string>& task_names() {
    static const std::vector<std::string> names = {
        "validate", "populations", "estimate-pop",  "expectation",
        "mitigate-bench", "entropy", "transmit", "schedule-bench"};
    return names;
}

struct NoiseConfig {
    std::optional<double> e1, e2, t_gate_ns, t1_us;
    /// identity | tensor-product | synthetic-correlated | two-local
    std::optional<std::string> confusion;
    std::optional<double> readout_error, correlation;
};

struct ExperimentConfig {
    std::string task;
    std::optional<int> n_min, n_max;
    std::optional<uint64_t> shots;
    std::optional<uint64_t> instances;
    std::optional<int> repeats;
    uint64_t seed = 1;
    uint64_t stream = 0;
    std::optional<std::string> output;
    std::optional<int> jobs;
    std::string format = "csv";
    NoiseConfig noise;

    std::optional<double> xi, eta;
    std::optional<int> rounds, epochs;
    std::optional<double> loss, target_err;
    std::optional<int> trials;
    std::optional<std::string> variant;
    std::optional<int> variant_param;
    std::optional<std::string> state;  // haar | ghz | neel | basis:<index>
    std::optional<std::string> pauli;
    std::optional<uint64_t> index;
    std::optional<std::string> path;     // sampled | dense-sum
    std::optional<std::string> backend;  // trajectory | dense

    /// Checks ranges and enumerations; throws ConfigError naming the field.
    void validate() const;
    /// Canonical JSON (sorted keys, unset fields omitted).
    std::string to_json() const;
    /// FNV-1a of to_json(), 16 hex digits.
    std::string hash() const;
};

/// Parses a JSON config. Unknown keys, wrong types and malformed text raise
/// ConfigError with the offending field and line. A non-empty `task` fills a
/// missing task key and must match a present one. The result is validated.
ExperimentConfig parse_config(const std::string& text, const std::string& task = "");
ExperimentConfig load_config(const std::string& path, const std::string& task = "");

/// "6" or "2..6".
std::pair<int, int> parse_n_range(const std::string& text);

}  // namespace compshadow
