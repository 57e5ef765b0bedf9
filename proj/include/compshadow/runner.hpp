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

#pragma once

#include <string>
#include <vector>

#include "compshadow/config.hpp"

namespace compshadow {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitCheckFailed = 3;

std::string version_string();

struct Artifact {
    std::string name;
    std::string content;
};

struct RunOutcome {
    int exit_code = kExitOk;
    std::vector<Artifact> artifacts;
    std::string report;  // human-readable summary for the terminal
};

/// Runs one validated experiment. Artifacts depend only on the config.
RunOutcome run_experiment(const ExperimentConfig& config);

std::string manifest_json(const ExperimentConfig& config, const RunOutcome& outcome,
                          double wall_seconds, const std::string& started_at);

}  // namespace compshadow
