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

#include "compshadow/readout.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "compshadow/compression.hpp"
#include "json.hpp"

namespace compshadow {

double ShadowEstimate::std_error() const {
    const double a = value();
    return std::sqrt(a * (1.0 - a) / static_cast<double>(shots));
}

namespace {

void check_shadow_index(uint64_t j, int n) {
    if (j == 0) throw std::domain_error("A_0 = 1 by definition and is never measured");
    if (j >= (uint64_t{1} << n)) throw std::domain_error("shadow index out of range");
}

ReadoutProgram shadow_program(uint64_t j, int n) {
    return ReadoutProgram{build_compression_circuit(j, n), 1, {}};
}

}  // namespace

ShadowEstimate measure_shadow(const StateVector& state, uint64_t j, uint64_t shots,
                              const NoiseSpec& noise, const Seed& seed, Backend backend) {
    const int n = state.num_qubits();
    check_shadow_index(j, n);
    const auto counts =
        sample_program(state, shadow_program(j, n), noise, nullptr, shots, backend, seed);
    return ShadowEstimate{j, shots, counts[0]};
}

double exact_shadow(const StateVector& state, uint64_t j, const NoiseSpec& noise) {
    const int n = state.num_qubits();
    check_shadow_index(j, n);
    return outcome_distribution(state, shadow_program(j, n), noise)[0];
}

ShadowProbVector measure_all_shadows(const StateVector& state, uint64_t shots,
                                     const NoiseSpec& noise, const Seed& seed, Backend backend) {
    const int n = state.num_qubits();
    std::vector<double> a(state.dim(), 1.0);
    for (uint64_t j = 1; j < state.dim(); ++j) {
        a[j] = measure_shadow(state, j, shots, noise, seed.derive(j), backend).value();
    }
    return ShadowProbVector(n, std::move(a));
}

PopulationVector recover_populations(const ShadowProbVector& a) { return inverse(a); }

uint64_t sample_inverse_walsh_row(uint64_t i, int n, Rng& rng) {
    check_qubit_count(n);
    const uint64_t dim = uint64_t{1} << n;
    if (i >= dim) throw std::domain_error("row index out of range");
    if (i != 0) return std::uniform_int_distribution<uint64_t>(0, dim - 1)(rng);
    const double corner = std::ldexp(1.0, 1 - n) - 1.0;
    if (uniform01(rng) < corner * corner) return 0;
    return std::uniform_int_distribution<uint64_t>(1, dim - 1)(rng);
}

uint64_t sample_inverse_walsh_row(uint64_t i, int n, const Seed& seed) {
    Rng rng = make_rng(seed);
    return sample_inverse_walsh_row(i, n, rng);
}

uint64_t IpeParams::samples_per_mean() const {
    validate();
    return static_cast<uint64_t>(std::ceil(9.0 / (xi * xi)));
}

uint64_t IpeParams::repetitions() const {
    validate();
    return static_cast<uint64_t>(std::ceil(6.0 * std::log2(2.0 / eta)));
}

void IpeParams::validate() const {
    if (!(xi > 0.0 && xi <= 1.0)) throw std::domain_error("IPE xi must lie in (0, 1]");
    if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("IPE eta must lie in (0, 1)");
}

IpeResult ipe(const std::function<uint64_t(Rng&)>& sample_a,
              const std::function<double(uint64_t)>& query_a,
              const std::function<double(uint64_t, Rng&)>& query_b, double norm_sq_a,
              const IpeParams& params, Rng& rng) {
    const uint64_t s = params.samples_per_mean();
    const uint64_t r = params.repetitions();
    IpeResult result;
    result.means.reserve(r);
    std::set<uint64_t> seen;
    for (uint64_t rep = 0; rep < r; ++rep) {
        double sum = 0.0;
        for (uint64_t k = 0; k < s; ++k) {
            const uint64_t i = sample_a(rng);
            const double a = query_a(i);
            if (a == 0.0) throw std::logic_error("length-square sampler drew a zero entry");
            sum += norm_sq_a * query_b(i, rng) / a;
            seen.insert(i);
        }
        result.means.push_back(sum / static_cast<double>(s));
    }
    result.draws = r * s;
    result.distinct_indices = seen.size();
    std::vector<double> sorted = result.means;
    std::sort(sorted.begin(), sorted.end());
    result.estimate = sorted[(sorted.size() - 1) / 2];
    return result;
}

uint64_t default_shots_per_query(const IpeParams& params) {
    params.validate();
    const double eps = 2.0 * params.xi;
    return static_cast<uint64_t>(std::ceil(1.0 / (eps * eps)));
}

IpeResult estimate_population(uint64_t a, const StateVector& state, const IpeParams& params,
                              uint64_t shots_per_query, const NoiseSpec& noise, const Seed& seed,
                              Backend backend) {
    const int n = state.num_qubits();
    if (a >= state.dim()) throw std::domain_error("population index out of range");
    const double norm_sq = inverse_row_stats(a, n).row_norm_sq;
    uint64_t query_counter = 0;
    auto sample = [&](Rng& rng) { return sample_inverse_walsh_row(a, n, rng); };
    auto query_a = [&](uint64_t j) { return inverse_walsh_entry(a, j, n); };
    auto query_b = [&](uint64_t j, Rng&) -> double {
        const uint64_t call = query_counter++;
        if (j == 0) return 1.0;
        if (shots_per_query == 0) return exact_shadow(state, j, noise);
        return measure_shadow(state, j, shots_per_query, noise, seed.derive(call + 1), backend)
            .value();
    };
    Rng rng = make_rng(seed.derive(0));
    return ipe(sample, query_a, query_b, norm_sq, params, rng);
}

Matrix2 basis_change(char letter) {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    switch (letter) {
        case 'X': return Matrix2{h, h, h, -h};
        case 'Y': return Matrix2{h, -i * h, h, i * h};
        case 'I':
        case 'Z': return Matrix2{1.0, 0.0, 0.0, 1.0};
    }
    throw std::domain_error(std::string("unknown Pauli letter '") + letter + "'");
}

ReadoutProgram pauli_program(const PauliString& pauli) {
    if (pauli.is_identity()) throw std::domain_error("identity Pauli has expectation 1");
    const uint64_t mask = pauli.support();
    ReadoutProgram program{build_compression_circuit(mask, pauli.n), 1, {}};
    for (int q = 1; q <= pauli.n; ++q) {
        const char c = pauli.letter(q);
        if (c == 'X' || c == 'Y') program.prerotations.emplace_back(q, basis_change(c));
    }
    return program;
}

ExpectationEstimate estimate_pauli_expectation(const StateVector& state, const PauliString& pauli,
                                               uint64_t shots, const NoiseSpec& noise,
                                               const Seed& seed, Backend backend) {
    if (pauli.n != state.num_qubits()) throw std::domain_error("Pauli size differs from state");
    const ReadoutProgram program = pauli_program(pauli);
    const auto counts = sample_program(state, program, noise, nullptr, shots, backend, seed);
    const double a = static_cast<double>(counts[0]) / static_cast<double>(shots);
    const double sign = pauli.negative ? -1.0 : 1.0;
    return ExpectationEstimate{sign * (2.0 * a - 1.0),
                               2.0 * std::sqrt(a * (1.0 - a) / static_cast<double>(shots)),
                               pauli.support(), shots};
}

double exact_pauli_expectation(const StateVector& state, const PauliString& pauli) {
    if (pauli.n != state.num_qubits()) throw std::domain_error("Pauli size differs from state");
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    detail::apply_pauli_inplace(amps, pauli.x, pauli.z);  // X^x Z^z
    Complex overlap = 0.0;
    for (size_t l = 0; l < amps.size(); ++l) overlap += std::conj(state[l]) * amps[l];
    // Y = i X Z on every qubit where both masks are set.
    static constexpr Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    overlap *= kPhase[std::popcount(pauli.x & pauli.z) % 4];
    return pauli.negative ? -overlap.real() : overlap.real();
}

LocalDensity local_density(const StateVector& state, uint64_t shots_per_site,
                           const NoiseSpec& noise, const Seed& seed, Backend backend) {
    const int n = state.num_qubits();
    LocalDensity out;
    out.sites.resize(n);
    for (int q = 1; q <= n; ++q) {
        const uint64_t j = qubit_bit(q);
        out.sites[q - 1] = shots_per_site == 0
                               ? exact_shadow(state, j, noise)
                               : measure_shadow(state, j, shots_per_site, noise, seed.derive(q),
                                                backend)
                                     .value();
        out.mean += out.sites[q - 1];
    }
    out.mean /= n;
    return out;
}

std::string to_jsonl(const ReadoutRecord& record) {
    nlohmann::ordered_json j;
    j["task"] = record.task;
    j["n"] = record.n;
    j["j"] = record.j;
    j["shots"] = record.shots;
    j["estimate"] = record.estimate;
    j["stderr"] = record.std_error;
    j["seed"] = record.seed.seed;
    j["stream"] = record.seed.stream;
    return j.dump();
}

}  // namespace compshadow
