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

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "compshadow/config.hpp"
#include "compshadow/runner.hpp"

namespace {

using namespace compshadow;

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

struct Flags {
    std::string config_path, out, n, format, confusion, variant, state, pauli, path, backend;
    uint64_t seed = 0, stream = 0, shots = 0, instances = 0, index = 0;
    int jobs = 0, repeats = 0, rounds = 0, epochs = 0, trials = 0, variant_param = 0;
    double xi = 0, eta = 0, loss = 0, target_err = 0;
    double e1 = 0, e2 = 0, t_gate = 0, t1 = 0, readout_error = 0, correlation = 0;
};

template <typename T, typename U>
void override_if(const CLI::App& app, const char* name, std::optional<T>& field, const U& v) {
    if (app.count(name) > 0) field = static_cast<T>(v);
}

template <typename T>
void override_if(const CLI::App& app, const char* name, T& field, const T& v) {
    if (app.count(name) > 0) field = v;
}

void apply_flags(const CLI::App& app, const Flags& f, ExperimentConfig& c) {
    if (app.count("--n") > 0) {
        const auto [lo, hi] = parse_n_range(f.n);
        c.n_min = lo;
        c.n_max = hi;
    }
    override_if(app, "--seed", c.seed, f.seed);
    override_if(app, "--stream", c.stream, f.stream);
    override_if(app, "--jobs", c.jobs, f.jobs);
    override_if(app, "--format", c.format, f.format);
    override_if(app, "--out", c.output, f.out);
    override_if(app, "--shots", c.shots, f.shots);
    override_if(app, "--instances", c.instances, f.instances);
    override_if(app, "--repeats", c.repeats, f.repeats);
    override_if(app, "--e1", c.noise.e1, f.e1);
    override_if(app, "--e2", c.noise.e2, f.e2);
    override_if(app, "--t-gate", c.noise.t_gate_ns, f.t_gate);
    override_if(app, "--t1", c.noise.t1_us, f.t1);
    override_if(app, "--confusion", c.noise.confusion, f.confusion);
    override_if(app, "--readout-error", c.noise.readout_error, f.readout_error);
    override_if(app, "--correlation", c.noise.correlation, f.correlation);
    override_if(app, "--xi", c.xi, f.xi);
    override_if(app, "--eta", c.eta, f.eta);
    override_if(app, "--rounds", c.rounds, f.rounds);
    override_if(app, "--epochs", c.epochs, f.epochs);
    override_if(app, "--loss", c.loss, f.loss);
    override_if(app, "--target-err", c.target_err, f.target_err);
    override_if(app, "--trials", c.trials, f.trials);
    override_if(app, "--variant", c.variant, f.variant);
    override_if(app, "--variant-param", c.variant_param, f.variant_param);
    override_if(app, "--state", c.state, f.state);
    override_if(app, "--pauli", c.pauli, f.pauli);
    override_if(app, "--index", c.index, f.index);
    override_if(app, "--path", c.path, f.path);
    override_if(app, "--backend", c.backend, f.backend);
}

std::filesystem::path output_dir(const ExperimentConfig& c) {
    if (c.output) return *c.output;
    if (const char* env = std::getenv("COMPSHADOW_OUT_DIR"); env && *env) return env;
    return ".";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CompShadow readout simulator and benchmark runner"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--config", f.config_path, "JSON config file; flags override its values")
        ->check(CLI::ExistingFile);
    app.add_option("--out", f.out, "output directory (default: $COMPSHADOW_OUT_DIR or .)");
    app.add_option("--seed", f.seed, "base seed");
    app.add_option("--stream", f.stream, "base seed stream");
    app.add_option("--jobs", f.jobs, "worker threads (default: hardware concurrency)");
    app.add_option("--format", f.format, "tabular output format")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_option("--n", f.n, "qubit count or range a..b");
    app.add_option("--shots", f.shots, "shots per circuit (0 = exact)");
    app.add_option("--instances", f.instances, "randomized-compiling instances");
    app.add_option("--repeats", f.repeats, "independent repetitions");
    app.add_option("--e1", f.e1, "single-qubit depolarizing rate");
    app.add_option("--e2", f.e2, "two-qubit depolarizing rate");
    app.add_option("--t-gate", f.t_gate, "gate duration in ns");
    app.add_option("--t1", f.t1, "T1 in us (0 disables damping)");
    app.add_option("--confusion", f.confusion,
                   "identity | tensor-product | synthetic-correlated | two-local");
    app.add_option("--readout-error", f.readout_error, "mean assignment error");
    app.add_option("--correlation", f.correlation, "correlated confusion weight");
    app.add_option("--xi", f.xi, "inner-product estimation accuracy");
    app.add_option("--eta", f.eta, "inner-product estimation failure probability");
    app.add_option("--rounds", f.rounds, "entropy estimation rounds M");
    app.add_option("--epochs", f.epochs, "unfolding iterations");
    app.add_option("--loss", f.loss, "transmission loss rate");
    app.add_option("--target-err", f.target_err, "target median error for transmission");
    app.add_option("--trials", f.trials, "trials per transmission point");
    app.add_option("--variant", f.variant, "first-qubit | qubit-k | ancilla | depth-l");
    app.add_option("--variant-param", f.variant_param, "k or l of the scheduling variant");
    app.add_option("--state", f.state, "haar | ghz | neel | basis:<index>");
    app.add_option("--pauli", f.pauli, "Pauli string, first letter on qubit 1");
    app.add_option("--index", f.index, "population index for estimate-pop");
    app.add_option("--path", f.path, "entropy estimator: sampled | dense-sum");
    app.add_option("--backend", f.backend, "noisy simulation backend: trajectory | dense");

    const std::pair<const char*, const char*> tasks[] = {
        {"validate", "certify circuits and readout identities"},
        {"populations", "recover populations from all CompShadows"},
        {"estimate-pop", "estimate one population by inner-product estimation"},
        {"expectation", "estimate a Pauli expectation with one CompShadow"},
        {"mitigate-bench", "compare mitigated readout against baselines"},
        {"entropy", "Renyi-2 entropy of XY-model dynamics"},
        {"transmit", "required copies under lossy transmission"},
        {"schedule-bench", "compare compression scheduling variants"}};
    for (const auto& [name, help] : tasks) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }
    const std::string task = app.get_subcommands().front()->get_name();

    ExperimentConfig config;
    try {
        if (!f.config_path.empty()) {
            config = load_config(f.config_path, task);
        } else {
            config.task = task;
        }
        apply_flags(app, f, config);
        config.validate();
    } catch (const ConfigError& e) {
        std::cerr << (f.config_path.empty() ? "" : f.config_path + ": ") << e.what() << '\n';
        return kExitConfigError;
    }

    const std::string started = utc_now();
    const auto t0 = std::chrono::steady_clock::now();
    RunOutcome outcome;
    try {
        outcome = run_experiment(config);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::filesystem::path dir = output_dir(config);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        out << content;
        if (!out) {
            std::cerr << "error: cannot write " << (dir / name).string() << '\n';
            return false;
        }
        std::cout << "wrote " << (dir / name).string() << '\n';
        return true;
    };
    std::cout << outcome.report;
    bool written = true;
    for (const auto& a : outcome.artifacts) written = write(a.name, a.content) && written;
    std::string stem = task;
    std::replace(stem.begin(), stem.end(), '-', '_');
    written = write(stem + ".manifest.json", manifest_json(config, outcome, wall, started)) &&
              written;
    if (!written) return 1;
    return outcome.exit_code;
}
