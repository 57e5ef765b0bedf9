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

#include "compshadow/mitigation.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "compshadow/compression.hpp"
#include "compshadow/parallel.hpp"
#include "json.hpp"

namespace compshadow {

namespace {

uint64_t compact(uint64_t value, uint64_t mask) {
    uint64_t out = 0;
    int k = 0;
    for (; mask; mask &= mask - 1, ++k) {
        if (value & (mask & (~mask + 1))) out |= uint64_t{1} << k;
    }
    return out;
}

std::vector<double> normalized(const std::vector<uint64_t>& counts) {
    double total = 0.0;
    for (uint64_t c : counts) total += static_cast<double>(c);
    if (total == 0.0) throw std::domain_error("empty histogram");
    std::vector<double> f(counts.size());
    for (size_t k = 0; k < counts.size(); ++k) f[k] = static_cast<double>(counts[k]) / total;
    return f;
}

double program_parity(const StateVector& state, const ReadoutProgram& program,
                      const NoiseSpec& noise, const PauliString* twirl, uint64_t shots,
                      Backend backend, const Seed& seed) {
    const uint64_t all = num_outcomes(program) - 1;
    if (shots == 0) {
        return parity_expectation(outcome_distribution(state, program, noise, twirl), all);
    }
    return parity_expectation(sample_program(state, program, noise, twirl, shots, backend, seed),
                              all);
}

}  // namespace

std::vector<TwirlInstance> twirl_instances(const CnotCircuit& circuit, uint64_t measured,
                                           size_t count, const Seed& seed, bool exhaustive) {
    const int n = circuit.num_qubits();
    auto make = [&](PauliString layer) {
        PauliString frame = conjugate_forward(layer, circuit);
        const uint64_t flips = compact(frame.x & measured, measured);
        return TwirlInstance{layer, frame, flips};
    };
    std::vector<TwirlInstance> out;
    if (exhaustive) {
        if (n > 6) throw std::domain_error("exhaustive twirl is limited to n <= 6");
        const uint64_t total = uint64_t{1} << (2 * n);
        out.reserve(total);
        for (uint64_t idx = 0; idx < total; ++idx) out.push_back(make(PauliString::from_index(n, idx)));
        return out;
    }
    if (count == 0) throw std::domain_error("twirl instance count must be positive");
    Rng rng = make_rng(seed);
    out.reserve(count);
    for (size_t k = 0; k < count; ++k) out.push_back(make(PauliString::random(n, rng)));
    return out;
}

double twirled_parity(const StateVector& state, const ReadoutProgram& program,
                      const NoiseSpec& noise, const std::vector<TwirlInstance>& instances,
                      uint64_t shots, Backend backend, const Seed& seed) {
    if (instances.empty()) throw std::domain_error("no twirl instances");
    const uint64_t per_instance =
        shots == 0 ? 0 : std::max<uint64_t>(1, shots / instances.size());
    double sum = 0.0;
    for (size_t k = 0; k < instances.size(); ++k) {
        const TwirlInstance& inst = instances[k];
        const double v = program_parity(state, program, noise, &inst.layer, per_instance, backend,
                                        seed.derive(k));
        sum += parity(inst.flip_mask) ? -v : v;
    }
    return sum / static_cast<double>(instances.size());
}

MitigationResult mitigated_expectation(const StateVector& state, const ReadoutProgram& program,
                                       const NoiseSpec& noise,
                                       const std::vector<TwirlInstance>& instances,
                                       uint64_t shots, const Seed& seed, Backend backend) {
    MitigationResult r;
    r.instances = instances.size();
    r.shots = shots;
    r.raw = program_parity(state, program, noise, nullptr, shots, backend, seed.derive(0));
    r.numerator = twirled_parity(state, program, noise, instances, shots, backend, seed.derive(1));
    const StateVector reference = basis_state(program.num_qubits(), 0);
    r.denominator =
        twirled_parity(reference, program, noise, instances, shots, backend, seed.derive(2));
    if (std::abs(r.denominator) < 0.05) {
        std::ostringstream msg;
        msg << "reference parity " << r.denominator << " is below 0.05 in magnitude";
        throw DegenerateReference(msg.str());
    }
    r.mitigated = r.numerator / r.denominator;
    return r;
}

double tpn_mitigate(const std::vector<double>& frequencies,
                    const std::vector<ConfusionMatrix>& per_qubit, uint64_t observable_mask) {
    const size_t m = per_qubit.size();
    if (frequencies.size() != (size_t{1} << m)) {
        throw std::domain_error("histogram size does not match the per-qubit confusions");
    }
    std::vector<double> v = frequencies;
    for (size_t q = 0; q < m; ++q) {
        const ConfusionMatrix& t = per_qubit[q];
        if (t.qubits() != 1) throw std::domain_error("TPN expects single-qubit confusions");
        const double a = t(0, 0), b = t(0, 1), c = t(1, 0), d = t(1, 1);
        const double det = a * d - b * c;
        if (std::abs(det) < 1e-12) throw std::domain_error("singular single-qubit confusion");
        const size_t bit = size_t{1} << q;
        for (size_t k = 0; k < v.size(); ++k) {
            if (k & bit) continue;
            const double x0 = v[k], x1 = v[k | bit];
            v[k] = (d * x0 - b * x1) / det;
            v[k | bit] = (-c * x0 + a * x1) / det;
        }
    }
    return parity_expectation(v, observable_mask);
}

double tpn_mitigate(const std::vector<uint64_t>& counts,
                    const std::vector<ConfusionMatrix>& per_qubit, uint64_t observable_mask) {
    return tpn_mitigate(normalized(counts), per_qubit, observable_mask);
}

PopulationVector ibu_unfold(const std::vector<double>& frequencies,
                            const ConfusionMatrix& confusion, int epochs) {
    if (epochs < 0) throw std::domain_error("epochs must be non-negative");
    const size_t d = confusion.dim();
    if (frequencies.size() != d) throw std::domain_error("histogram size does not match confusion");
    std::vector<double> p(d, 1.0 / static_cast<double>(d));
    std::vector<double> predicted(d), next(d);
    for (int e = 0; e < epochs; ++e) {
        for (size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (size_t k = 0; k < d; ++k) s += confusion(j, k) * p[k];
            predicted[j] = s;
        }
        double total = 0.0;
        for (size_t i = 0; i < d; ++i) {
            double s = 0.0;
            for (size_t j = 0; j < d; ++j) {
                if (predicted[j] > 0.0) s += confusion(j, i) * frequencies[j] / predicted[j];
            }
            next[i] = p[i] * s;
            total += next[i];
        }
        for (size_t i = 0; i < d; ++i) p[i] = next[i] / total;
    }
    return PopulationVector(confusion.qubits(), std::move(p));
}

PopulationVector ibu_unfold(const std::vector<uint64_t>& counts, const ConfusionMatrix& confusion,
                            int epochs) {
    return ibu_unfold(normalized(counts), confusion, epochs);
}

const MethodSummary& MitigationReport::method(const std::string& name) const {
    for (const auto& s : summary) {
        if (s.method == name) return s;
    }
    throw std::domain_error("no method '" + name + "' in report");
}

std::string MitigationReport::csv() const {
    std::ostringstream out;
    out.precision(12);
    out << "method,n,shots,seed,error\n";
    for (const auto& r : rows) {
        out << r.method << ',' << r.n << ',' << r.shots << ',' << r.seed << ',' << r.error << '\n';
    }
    return out.str();
}

std::string MitigationReport::summary_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& s : summary) j[s.method] = {{"mean_error", s.mean_error}, {"sem", s.sem}};
    return j.dump(2);
}

namespace {

ConfusionMatrix device_confusion(const BenchmarkConfig& c, const Seed& seed) {
    switch (c.confusion_kind) {
        case ConfusionKind::kIdentity: return ConfusionMatrix();
        case ConfusionKind::kTensorProduct:
            return ConfusionMatrix::synthetic_correlated(c.n, 0.0, c.readout_error, seed);
        case ConfusionKind::kSyntheticCorrelated:
            return ConfusionMatrix::synthetic_correlated(c.n, c.correlation, c.readout_error, seed);
    }
    return ConfusionMatrix();
}

}  // namespace

MitigationReport benchmark_compare(const BenchmarkConfig& config) {
    const int n = config.n;
    check_qubit_count(n);
    if (config.repetitions < 1) throw std::domain_error("repetitions must be positive");
    static const char* kMethods[] = {"compshadow", "compshadow-raw", "direct", "tpn", "unfolding"};
    constexpr size_t kNumMethods = 5;
    const size_t reps = static_cast<size_t>(config.repetitions);
    std::vector<std::array<double, kNumMethods>> errors(reps);

    parallel_for(reps, config.jobs, [&](size_t rep) {
        const Seed seed{config.seed.seed + rep, config.seed.stream};
        NoiseSpec noise;
        noise.e1 = config.e1;
        noise.e2 = config.e2;
        noise.t_gate_ns = config.t_gate_ns;
        noise.t1_us = config.t1_us;
        noise.confusion = device_confusion(config, seed.derive(0));
        noise.validate();

        Rng rng = make_rng(seed.derive(1));
        const uint64_t l = std::uniform_int_distribution<uint64_t>(0, (uint64_t{1} << n) - 1)(rng);
        const StateVector state = basis_state(n, l);
        const double ideal = parity(l) ? -1.0 : 1.0;

        const ReadoutProgram shadow{build_compression_circuit((uint64_t{1} << n) - 1, n), 1, {}};
        const size_t count = config.instances == 0 ? static_cast<size_t>(4 * n) : config.instances;
        const auto instances = twirl_instances(shadow.circuit, 1, count, seed.derive(2));
        const MitigationResult cs = mitigated_expectation(state, shadow, noise, instances,
                                                          config.shots, seed.derive(3),
                                                          config.backend);

        const ReadoutProgram direct{CnotCircuit(n), (uint64_t{1} << n) - 1, {}};
        std::vector<double> freq;
        if (config.shots == 0) {
            freq = outcome_distribution(state, direct, noise);
        } else {
            freq = normalized(sample_program(state, direct, noise, nullptr, config.shots,
                                             config.backend, seed.derive(4)));
        }
        std::vector<ConfusionMatrix> marginals;
        if (noise.confusion.empty()) {
            marginals.assign(n, ConfusionMatrix::identity(1));
        } else {
            marginals = noise.confusion.single_qubit_marginals();
        }
        const uint64_t all = (uint64_t{1} << n) - 1;
        const double direct_value = parity_expectation(freq, all);
        const double tpn = tpn_mitigate(freq, marginals, all);
        const PopulationVector unfolded =
            ibu_unfold(freq, ConfusionMatrix::tensor_product(marginals), config.epochs);
        const double ibu = parity_expectation(unfolded.values(), all);

        errors[rep] = {std::abs(cs.mitigated - ideal), std::abs(cs.raw - ideal),
                       std::abs(direct_value - ideal), std::abs(tpn - ideal),
                       std::abs(ibu - ideal)};
    });

    MitigationReport report;
    for (size_t m = 0; m < kNumMethods; ++m) {
        double sum = 0.0, sum_sq = 0.0;
        for (size_t rep = 0; rep < reps; ++rep) {
            const double e = errors[rep][m];
            report.rows.push_back(
                BenchmarkRow{kMethods[m], n, config.shots, config.seed.seed + rep, e});
            sum += e;
            sum_sq += e * e;
        }
        const double mean = sum / static_cast<double>(reps);
        const double var =
            reps > 1 ? (sum_sq - sum * mean) / static_cast<double>(reps - 1) : 0.0;
        report.summary.push_back(MethodSummary{
            kMethods[m], mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(reps))});
    }
    return report;
}

namespace {

MitigationReport summarize(const std::vector<std::string>& methods,
                           const std::vector<std::vector<double>>& errors, int n, uint64_t shots,
                           uint64_t base_seed) {
    MitigationReport report;
    for (size_t m = 0; m < methods.size(); ++m) {
        double sum = 0.0, sum_sq = 0.0;
        const size_t reps = errors.size();
        for (size_t rep = 0; rep < reps; ++rep) {
            const double e = errors[rep][m];
            report.rows.push_back(BenchmarkRow{methods[m], n, shots, base_seed + rep, e});
            sum += e;
            sum_sq += e * e;
        }
        const double mean = sum / static_cast<double>(reps);
        const double var = reps > 1 ? (sum_sq - sum * mean) / static_cast<double>(reps - 1) : 0.0;
        report.summary.push_back(MethodSummary{
            methods[m], mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(reps))});
    }
    return report;
}

}  // namespace

MitigationReport schedule_bench(const ScheduleBenchConfig& config) {
    const int n = config.n;
    check_qubit_count(n);
    if (n < 2) throw std::domain_error("scheduling comparison needs n >= 2");
    if (config.repetitions < 1) throw std::domain_error("repetitions must be positive");
    const size_t reps = static_cast<size_t>(config.repetitions);
    std::vector<std::vector<double>> errors(reps);
    const SchedulePlan first = build_scheduled(ScheduleVariant::kFirstQubit, 0, n);
    const SchedulePlan one_depth = build_scheduled(ScheduleVariant::kDepthL, 1, n);

    parallel_for(reps, config.jobs, [&](size_t rep) {
        const Seed seed{config.seed.seed + rep, config.seed.stream};
        NoiseSpec noise;
        noise.e1 = config.e1;
        noise.e2 = config.e2;
        noise.t_gate_ns = config.t_gate_ns;
        noise.t1_us = config.t1_us;
        noise.confusion = ConfusionMatrix::two_local(n, config.correlation, config.readout_error,
                                                     seed.derive(0));
        noise.validate();
        Rng rng = make_rng(seed.derive(1));
        const uint64_t l = std::uniform_int_distribution<uint64_t>(0, (uint64_t{1} << n) - 1)(rng);
        const StateVector state = basis_state(n, l);
        const double ideal = parity(l) ? -1.0 : 1.0;

        std::vector<double> row;
        const std::pair<const SchedulePlan*, size_t> runs[2] = {
            {&first, config.instances_first_qubit == 0 ? static_cast<size_t>(4 * n)
                                                       : config.instances_first_qubit},
            {&one_depth, config.instances_one_depth}};
        for (size_t v = 0; v < 2; ++v) {
            const SchedulePlan& plan = *runs[v].first;
            const ReadoutProgram program{plan.circuit, plan.measured, {}};
            const auto instances =
                twirl_instances(plan.circuit, plan.measured, runs[v].second, seed.derive(2 + v));
            const MitigationResult r = mitigated_expectation(state, program, noise, instances,
                                                             config.shots, seed.derive(4 + v),
                                                             config.backend);
            row.push_back(std::abs(r.mitigated - ideal));
        }
        errors[rep] = std::move(row);
    });
    return summarize({"compshadow", "one-depth"}, errors, n, config.shots, config.seed.seed);
}

}  // namespace compshadow
