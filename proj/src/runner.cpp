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

#include "compshadow/runner.hpp"

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "compshadow/compression.hpp"
#include "compshadow/executor.hpp"
#include "compshadow/mitigation.hpp"
#include "compshadow/parallel.hpp"
#include "compshadow/probing.hpp"
#include "compshadow/readout.hpp"
#include "compshadow/transmission.hpp"
#include "compshadow/walsh.hpp"
#include "compshadow/xy_model.hpp"
#include "json.hpp"

#ifndef COMPSHADOW_VERSION
#define COMPSHADOW_VERSION "0.0.0"
#endif

namespace compshadow {

namespace {

using nlohmann::ordered_json;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<ordered_json>> rows;

    void add(std::vector<ordered_json> row) { rows.push_back(std::move(row)); }

    static std::string cell(const ordered_json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
        if (v.is_number_float()) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
            return buf;
        }
        return v.dump();
    }

    std::string render(const std::string& format) const {
        std::ostringstream out;
        if (format == "jsonl") {
            for (const auto& row : rows) {
                ordered_json j = ordered_json::object();
                for (size_t c = 0; c < columns.size(); ++c) j[columns[c]] = row[c];
                out << j.dump() << '\n';
            }
            return out.str();
        }
        for (size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
        out << '\n';
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell(row[c]);
            out << '\n';
        }
        return out.str();
    }
};

struct Context {
    const ExperimentConfig& config;
    RunOutcome outcome;
    int jobs;

    void emit(const std::string& stem, const Table& table) {
        const std::string ext = config.format == "jsonl" ? ".jsonl" : ".csv";
        outcome.artifacts.push_back({stem + ext, table.render(config.format)});
    }
    void emit_json(const std::string& name, const ordered_json& j) {
        outcome.artifacts.push_back({name, j.dump(2) + "\n"});
    }
    void line(const std::string& text) { outcome.report += text + "\n"; }
};

std::string fmt(const char* pattern, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

std::vector<int> n_values(const ExperimentConfig& c, int lo, int hi) {
    std::vector<int> ns;
    for (int n = c.n_min.value_or(lo); n <= c.n_max.value_or(hi); ++n) ns.push_back(n);
    return ns;
}

Seed base_seed(const ExperimentConfig& c) { return Seed{c.seed, c.stream}; }

Backend parse_backend(const std::optional<std::string>& text, Backend fallback) {
    if (!text) return fallback;
    return *text == "dense" ? Backend::kDense : Backend::kTrajectory;
}

ConfusionMatrix make_confusion(const std::string& kind, int n, double error, double correlation,
                               const Seed& seed) {
    if (kind == "tensor-product") return ConfusionMatrix::synthetic_correlated(n, 0.0, error, seed);
    if (kind == "synthetic-correlated") {
        return ConfusionMatrix::synthetic_correlated(n, correlation, error, seed);
    }
    if (kind == "two-local") return ConfusionMatrix::two_local(n, correlation, error, seed);
    return ConfusionMatrix();
}

/// Noise for the single-state tasks: ideal unless the config says otherwise.
NoiseSpec make_noise(const ExperimentConfig& c, int n, const Seed& seed) {
    NoiseSpec noise;
    noise.e1 = c.noise.e1.value_or(0.0);
    noise.e2 = c.noise.e2.value_or(0.0);
    noise.t_gate_ns = c.noise.t_gate_ns.value_or(24.0);
    noise.t1_us = c.noise.t1_us.value_or(0.0);
    noise.confusion = make_confusion(c.noise.confusion.value_or("identity"), n,
                                     c.noise.readout_error.value_or(0.0222),
                                     c.noise.correlation.value_or(0.02), seed);
    noise.validate();
    return noise;
}

StateVector make_state(const ExperimentConfig& c, int n, const Seed& seed) {
    const std::string kind = c.state.value_or("haar");
    if (kind == "ghz") return ghz_state(n);
    if (kind == "neel") return neel_state(n);
    if (kind.rfind("basis:", 0) == 0) {
        const uint64_t l = std::stoull(kind.substr(6));
        if (l >= (uint64_t{1} << n)) {
            throw ConfigError("params.state", 0, "basis index out of range for n");
        }
        return basis_state(n, l);
    }
    return haar_random_state(n, seed);
}

int single_n(const ExperimentConfig& c, int fallback) {
    if (c.n_min && *c.n_min != *c.n_max) {
        throw ConfigError("n", 0, "task '" + c.task + "' takes a single n");
    }
    return c.n_max.value_or(fallback);
}

double ideal_plan_parity(const SchedulePlan& plan, const StateVector& state) {
    const ReadoutProgram program{plan.circuit, plan.measured, {}};
    const auto dist = outcome_distribution(prepare_input(plan, state), program, NoiseSpec::ideal());
    return parity_expectation(dist, num_outcomes(program) - 1);
}

std::vector<SchedulePlan> all_plans(int n) {
    std::vector<SchedulePlan> plans;
    plans.push_back(build_scheduled(ScheduleVariant::kFirstQubit, 0, n));
    for (int k = 1; k <= n; ++k) plans.push_back(build_scheduled(ScheduleVariant::kQubitK, k, n));
    plans.push_back(build_scheduled(ScheduleVariant::kAncilla, 0, n));
    for (int l = 1; l < n; ++l) plans.push_back(build_scheduled(ScheduleVariant::kDepthL, l, n));
    return plans;
}

/// Largest deviation among scheduling variants from the direct parity.
double schedule_deviation(int n, int states, const Seed& seed) {
    const auto plans = all_plans(n);
    double worst = 0.0;
    for (int s = 0; s < states; ++s) {
        const StateVector state = haar_random_state(n, seed.derive(s));
        const double direct = z_mask_expectation(state.populations(), (uint64_t{1} << n) - 1);
        for (const auto& plan : plans) {
            worst = std::max(worst, std::abs(ideal_plan_parity(plan, state) - direct));
        }
    }
    return worst;
}

PopulationVector random_populations(int n, const Seed& seed) {
    return haar_random_state(n, seed).populations();
}

void run_validate(Context& ctx) {
    const auto& c = ctx.config;
    const Seed seed = base_seed(c);
    Table table{{"check", "n", "pass", "deviation"}, {}};
    bool all_pass = true;
    auto record = [&](const std::string& check, int n, bool pass, double deviation) {
        table.add({check, n, pass, deviation});
        all_pass = all_pass && pass;
        ctx.line(std::string(pass ? "PASS  " : "FAIL  ") + check +
                 " n=" + std::to_string(n) + " deviation=" + fmt("%.3g", deviation));
    };
    for (int n : n_values(c, 6, 6)) {
        const Seed ns = seed.derive(static_cast<uint64_t>(n));
        if (n >= 2) {
            const CertifyReport rep = certify_family(n);
            record("certify-family", n, rep.pass, rep.pass ? 0.0 : 1.0);
        }
        double trip = 0.0;
        for (int k = 0; k < 10; ++k) {
            const PopulationVector p = random_populations(n, ns.derive(k));
            const PopulationVector back = recover_populations(forward(p));
            for (size_t l = 0; l < p.dim(); ++l) trip = std::max(trip, std::abs(back[l] - p[l]));
        }
        record("inverse-round-trip", n, trip <= 1e-12, trip);

        const double frob = std::abs(inverse_frobenius_sq(n) - (5.0 - std::ldexp(1.0, 2 - n)));
        record("inverse-frobenius", n, frob <= 1e-9, frob);

        const PopulationVector p = random_populations(n, ns.derive(100));
        const ShadowProbVector a = forward(p);
        double lhs = 0.0;
        for (size_t j = 0; j < a.dim(); ++j) lhs += a[j] * (1.0 - a[j]);
        const double rhs = std::ldexp(1.0, n - 2) * (1.0 - p.sum_of_squares());
        record("shadow-variance-sum", n, std::abs(lhs - rhs) <= 1e-9, std::abs(lhs - rhs));

        const StateVector psi = haar_random_state(n, ns.derive(200));
        double local = 0.0;
        for (int q = 1; q <= n; ++q) {
            const double shadow = exact_shadow(psi, uint64_t{1} << (q - 1), NoiseSpec::ideal());
            local = std::max(local, std::abs(shadow - psi.marginal_zero_probability(qubit_bit(q))));
        }
        record("local-density", n, local <= 1e-12, local);

        if (n >= 2) {
            const double dev = schedule_deviation(n, 3, ns.derive(300));
            record("schedule-equivalence", n, dev <= 1e-12, dev);
        }
    }
    ctx.emit("validate", table);
    if (!all_pass) ctx.outcome.exit_code = kExitCheckFailed;
}

void run_populations(Context& ctx) {
    const auto& c = ctx.config;
    const int n = single_n(c, 4);
    const Seed seed = base_seed(c);
    const uint64_t shots = c.shots.value_or(10000);
    const Backend backend = parse_backend(c.backend, Backend::kTrajectory);
    const int reps = c.repeats.value_or(1);
    Table table{{"rep", "n", "l", "population", "estimate", "shots", "seed"}, {}};
    std::vector<std::vector<double>> estimates(reps);
    std::vector<PopulationVector> truth(reps);
    parallel_for(reps, ctx.jobs, [&](size_t r) {
        const Seed rs = seed.derive(r);
        const StateVector state = make_state(c, n, rs.derive(0));
        const NoiseSpec noise = make_noise(c, n, rs.derive(1));
        ShadowProbVector a = shots == 0 ? forward(state.populations())
                                        : measure_all_shadows(state, shots, noise, rs.derive(2),
                                                              backend);
        if (shots == 0 && !noise.gate_noise_free()) {
            std::vector<double> v(a.dim(), 1.0);
            for (size_t j = 1; j < a.dim(); ++j) v[j] = exact_shadow(state, j, noise);
            a = ShadowProbVector(n, std::move(v));
        }
        truth[r] = state.populations();
        const PopulationVector p_hat = inverse(a);
        estimates[r].assign(p_hat.values().begin(), p_hat.values().end());
    });
    double worst = 0.0;
    for (int r = 0; r < reps; ++r) {
        for (size_t l = 0; l < truth[r].dim(); ++l) {
            table.add({r, n, l, truth[r][l], estimates[r][l], shots, c.seed});
            worst = std::max(worst, std::abs(truth[r][l] - estimates[r][l]));
        }
    }
    ctx.emit("populations", table);
    ctx.line("populations n=" + std::to_string(n) + " shots=" + std::to_string(shots) +
             " max |p_hat - p| = " + fmt("%.6g", worst));
}

void run_estimate_pop(Context& ctx) {
    const auto& c = ctx.config;
    const int n = single_n(c, 4);
    const Seed seed = base_seed(c);
    IpeParams params{c.xi.value_or(0.2), c.eta.value_or(0.1)};
    params.validate();
    const uint64_t shots = c.shots.value_or(default_shots_per_query(params));
    const uint64_t a = c.index.value_or(0);
    if (a >= (uint64_t{1} << n)) throw ConfigError("params.index", 0, "index out of range for n");
    const Backend backend = parse_backend(c.backend, Backend::kTrajectory);
    const int reps = c.repeats.value_or(10);
    std::vector<std::vector<ordered_json>> rows(reps);
    parallel_for(reps, ctx.jobs, [&](size_t r) {
        const Seed rs = seed.derive(r);
        const StateVector state = make_state(c, n, rs.derive(0));
        const NoiseSpec noise = make_noise(c, n, rs.derive(1));
        const IpeResult res = estimate_population(a, state, params, shots, noise, rs.derive(2),
                                                  backend);
        const double truth = state.populations()[a];
        rows[r] = {static_cast<int>(r), n, a, res.estimate, truth, std::abs(res.estimate - truth),
                   res.draws, res.distinct_indices, shots, c.seed};
    });
    Table table{{"rep", "n", "index", "estimate", "population", "error", "draws",
                 "distinct_queries", "shots_per_query", "seed"},
                std::move(rows)};
    int within = 0;
    for (const auto& row : table.rows) within += row[5].get<double>() <= params.xi;
    ctx.emit("estimate_pop", table);
    ctx.line("estimate-pop n=" + std::to_string(n) + " index=" + std::to_string(a) + ": " +
             std::to_string(within) + "/" + std::to_string(reps) + " trials within xi=" +
             fmt("%.3g", params.xi));
}

void run_expectation(Context& ctx) {
    const auto& c = ctx.config;
    const int n = single_n(c, 4);
    const Seed seed = base_seed(c);
    const std::string letters = c.pauli.value_or(std::string(n, 'Z'));
    if (static_cast<int>(letters.size()) != n) {
        throw ConfigError("params.pauli", 0, "length must equal n");
    }
    const PauliString pauli = PauliString::parse(letters);
    const uint64_t shots = c.shots.value_or(10000);
    const Backend backend = parse_backend(c.backend, Backend::kTrajectory);
    const int reps = c.repeats.value_or(10);
    std::vector<std::vector<ordered_json>> rows(reps);
    parallel_for(reps, ctx.jobs, [&](size_t r) {
        const Seed rs = seed.derive(r);
        const StateVector state = make_state(c, n, rs.derive(0));
        const NoiseSpec noise = make_noise(c, n, rs.derive(1));
        const double exact = exact_pauli_expectation(state, pauli);
        const ExpectationEstimate e =
            shots == 0 ? ExpectationEstimate{exact, 0.0, 0, 0}
                       : estimate_pauli_expectation(state, pauli, shots, noise, rs.derive(2),
                                                    backend);
        rows[r] = {static_cast<int>(r), n, letters, e.value, e.std_error, exact,
                   std::abs(e.value - exact), shots, c.seed};
    });
    Table table{{"rep", "n", "pauli", "estimate", "stderr", "exact", "error", "shots", "seed"},
                std::move(rows)};
    double sq = 0.0;
    for (const auto& row : table.rows) sq += std::pow(row[6].get<double>(), 2);
    ctx.emit("expectation", table);
    ctx.line("expectation " + letters + " shots=" + std::to_string(shots) +
             " rmse=" + fmt("%.6g", std::sqrt(sq / reps)));
}

void run_mitigate_bench(Context& ctx) {
    const auto& c = ctx.config;
    Table table{{"method", "n", "shots", "seed", "error"}, {}};
    ordered_json summary = ordered_json::object();
    for (int n : n_values(c, 6, 6)) {
        BenchmarkConfig b;
        b.n = n;
        b.shots = c.shots.value_or(0);
        b.repetitions = c.repeats.value_or(100);
        b.instances = c.instances.value_or(0);
        b.epochs = c.epochs.value_or(30);
        b.e1 = c.noise.e1.value_or(b.e1);
        b.e2 = c.noise.e2.value_or(b.e2);
        b.t_gate_ns = c.noise.t_gate_ns.value_or(b.t_gate_ns);
        b.t1_us = c.noise.t1_us.value_or(b.t1_us);
        b.readout_error = c.noise.readout_error.value_or(b.readout_error);
        b.correlation = c.noise.correlation.value_or(b.correlation);
        const std::string kind = c.noise.confusion.value_or("synthetic-correlated");
        if (kind == "two-local") {
            throw ConfigError("noise.confusion", 0, "mitigate-bench supports identity, "
                                                    "tensor-product and synthetic-correlated");
        }
        b.confusion_kind = kind == "identity"         ? ConfusionKind::kIdentity
                           : kind == "tensor-product" ? ConfusionKind::kTensorProduct
                                                      : ConfusionKind::kSyntheticCorrelated;
        b.backend = parse_backend(c.backend, Backend::kDense);
        b.seed = base_seed(c);
        b.jobs = ctx.jobs;
        const MitigationReport report = benchmark_compare(b);
        for (const auto& row : report.rows) {
            table.add({row.method, row.n, row.shots, row.seed, row.error});
        }
        ordered_json per = ordered_json::object();
        std::string text = "n=" + std::to_string(n);
        for (const auto& s : report.summary) {
            per[s.method] = {{"mean_error", s.mean_error}, {"sem", s.sem}};
            text += "  " + s.method + "=" + fmt("%.4g", s.mean_error);
        }
        summary[std::to_string(n)] = per;
        ctx.line(text);
    }
    ctx.emit("mitigate_bench", table);
    ctx.emit_json("mitigate_bench_summary.json", summary);
}

void run_entropy(Context& ctx) {
    const auto& c = ctx.config;
    Fig3Config f;
    f.n = single_n(c, 6);
    if (f.n < 6) throw ConfigError("n", 0, "entropy needs n >= 6 for the default subsystems");
    f.repetitions = c.repeats.value_or(100);
    if (c.rounds) f.options.rounds = *c.rounds;
    if (c.shots) f.options.shots = *c.shots;
    if (c.path) f.options.path = *c.path == "sampled" ? RenyiPath::kSampled : RenyiPath::kDenseSum;
    f.options.ipe = IpeParams{c.xi.value_or(0.2), c.eta.value_or(0.1)};
    f.options.backend = parse_backend(c.backend, Backend::kTrajectory);
    f.pair_distant_b = qubit_bit(f.n);
    f.seed = base_seed(c);
    f.jobs = ctx.jobs;
    const auto rows = fig3_experiment(f);
    Table table{{"t", "B_mode", "estimate", "theory", "stderr", "seed"}, {}};
    int tracked = 0, total = 0;
    for (const auto& r : rows) {
        table.add({r.t, r.series, r.estimate, r.theory, r.std_error, r.seed});
        if (r.series == "fixed" || r.series == "disorder") {
            ++total;
            tracked += std::abs(r.estimate - r.theory) <= 2.0 * r.std_error + 1e-12;
        }
    }
    ctx.emit("entropy", table);
    ctx.line("entropy n=" + std::to_string(f.n) + ": " + std::to_string(tracked) + "/" +
             std::to_string(total) + " S2 points within 2 standard errors of theory");
}

void run_transmit(Context& ctx) {
    const auto& c = ctx.config;
    const double loss = c.loss.value_or(0.3);
    const double target = c.target_err.value_or(0.01);
    const int trials = c.trials.value_or(100);
    const auto ns = n_values(c, 3, 9);
    const Seed seed = base_seed(c);
    const Protocol protocols[2] = {Protocol::kDirect, Protocol::kCompShadow};
    const size_t points = 2 * ns.size();
    std::vector<RequiredCopies> required(points);
    std::vector<TransmissionResult> runs(points);
    parallel_for(points, ctx.jobs, [&](size_t i) {
        const Protocol p = protocols[i / ns.size()];
        const int n = ns[i % ns.size()];
        const Seed ps = seed.derive(static_cast<uint64_t>(p));
        required[i] = required_copies(p, n, loss, target, ps, trials);
        runs[i] = transmit(p, n, required[i].copies, loss, ps.derive(uint64_t{1} << 40));
    });
    Table table{{"protocol", "n", "n_c", "r", "seed", "survivors", "estimate", "error", "flag"}, {}};
    ordered_json summary = ordered_json::object();
    summary["loss"] = loss;
    summary["target_err"] = target;
    summary["trials"] = trials;
    for (size_t pi = 0; pi < 2; ++pi) {
        std::vector<double> xs, ys;
        ordered_json per = ordered_json::array();
        for (size_t k = 0; k < ns.size(); ++k) {
            const size_t i = pi * ns.size() + k;
            const auto& r = runs[i];
            std::string flag = r.no_survivors ? "no-survivors" : "";
            if (required[i].infeasible) flag += flag.empty() ? "infeasible" : "+infeasible";
            table.add({to_string(r.protocol), r.n, r.sent, loss, c.seed, r.survivors, r.estimate,
                       r.error, flag});
            per.push_back({{"n", ns[k]},
                           {"required_copies", required[i].copies},
                           {"median_error", required[i].median_error},
                           {"infeasible", required[i].infeasible}});
            if (ns[k] % 2 == 1) {
                xs.push_back(ns[k]);
                ys.push_back(static_cast<double>(required[i].copies));
            }
        }
        const LinearFit fit = pi == 0 ? fit_exponential(xs, ys) : fit_linear(xs, ys);
        const std::string name = to_string(protocols[pi]);
        summary[name] = {{"required", per},
                         {"fit", pi == 0 ? "exponential" : "linear"},
                         {"fit_over", "odd n"},
                         {"slope", fit.slope},
                         {"intercept", fit.intercept},
                         {"r2", fit.r2}};
        ctx.line(name + ": " + (pi == 0 ? "exponential" : "linear") + " fit slope=" +
                 fmt("%.4g", fit.slope) + " r2=" + fmt("%.4f", fit.r2));
    }
    if (!ns.empty() && ns.back() % 2 == 1) {
        const double ratio = static_cast<double>(required[ns.size() - 1].copies) /
                             static_cast<double>(required[2 * ns.size() - 1].copies);
        summary["ratio_at_max_n"] = ratio;
        ctx.line("direct/compshadow required copies at n=" + std::to_string(ns.back()) + ": " +
                 fmt("%.3g", ratio));
    }
    ctx.emit("transmit", table);
    ctx.emit_json("transmit_summary.json", summary);
}

void run_schedule_bench(Context& ctx) {
    const auto& c = ctx.config;
    Table table{{"method", "n", "shots", "seed", "error"}, {}};
    ordered_json summary = ordered_json::object();
    bool equivalent = true;
    for (int n : n_values(c, 6, 6)) {
        if (n < 2) throw ConfigError("n", 0, "schedule-bench needs n >= 2");
        const double dev = schedule_deviation(n, 20, base_seed(c).derive(static_cast<uint64_t>(n)));
        equivalent = equivalent && dev <= 1e-12;
        ScheduleBenchConfig s;
        s.n = n;
        s.shots = c.shots.value_or(0);
        s.repetitions = c.repeats.value_or(100);
        s.e1 = c.noise.e1.value_or(s.e1);
        s.e2 = c.noise.e2.value_or(s.e2);
        s.t_gate_ns = c.noise.t_gate_ns.value_or(s.t_gate_ns);
        s.t1_us = c.noise.t1_us.value_or(s.t1_us);
        s.readout_error = c.noise.readout_error.value_or(s.readout_error);
        s.correlation = c.noise.correlation.value_or(s.correlation);
        if (c.instances) s.instances_first_qubit = *c.instances;
        s.backend = parse_backend(c.backend, Backend::kDense);
        s.seed = base_seed(c);
        s.jobs = ctx.jobs;
        const MitigationReport report = schedule_bench(s);
        for (const auto& row : report.rows) {
            table.add({row.method, row.n, row.shots, row.seed, row.error});
        }
        ordered_json per = ordered_json::object();
        per["variant_max_deviation"] = dev;
        std::string text = "n=" + std::to_string(n) + " variants agree to " + fmt("%.2g", dev);
        for (const auto& m : report.summary) {
            per[m.method] = {{"mean_error", m.mean_error}, {"sem", m.sem}};
            text += "  " + m.method + "=" + fmt("%.4g", m.mean_error);
        }
        summary[std::to_string(n)] = per;
        ctx.line(text);
    }
    ctx.emit("schedule_bench", table);
    ctx.emit_json("schedule_bench_summary.json", summary);
    if (!equivalent) ctx.outcome.exit_code = kExitCheckFailed;
}

}  // namespace

std::string version_string() { return COMPSHADOW_VERSION; }

RunOutcome run_experiment(const ExperimentConfig& config) {
    config.validate();
    Context ctx{config, {}, config.jobs.value_or(default_jobs())};
    const std::string& t = config.task;
    if (t == "validate") run_validate(ctx);
    else if (t == "populations") run_populations(ctx);
    else if (t == "estimate-pop") run_estimate_pop(ctx);
    else if (t == "expectation") run_expectation(ctx);
    else if (t == "mitigate-bench") run_mitigate_bench(ctx);
    else if (t == "entropy") run_entropy(ctx);
    else if (t == "transmit") run_transmit(ctx);
    else if (t == "schedule-bench") run_schedule_bench(ctx);
    return std::move(ctx.outcome);
}

std::string manifest_json(const ExperimentConfig& config, const RunOutcome& outcome,
                          double wall_seconds, const std::string& started_at) {
    ordered_json j = ordered_json::object();
    j["task"] = config.task;
    j["config"] = nlohmann::json::parse(config.to_json());
    j["config_hash"] = config.hash();
    j["versions"] = {{"compshadow", version_string()},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                   std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                     {"compiler", __VERSION__}};
    j["started_at"] = started_at;
    j["wall_time_s"] = wall_seconds;
    j["exit_code"] = outcome.exit_code;
    ordered_json files = ordered_json::array();
    for (const auto& a : outcome.artifacts) files.push_back(a.name);
    j["artifacts"] = files;
    return j.dump(2) + "\n";
}

}  // namespace compshadow
