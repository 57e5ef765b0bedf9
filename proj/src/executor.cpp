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

#include "compshadow/executor.hpp"

#include <stdexcept>

#include "compshadow/density_matrix.hpp"

namespace compshadow {

namespace {

enum class OpKind { kUnitary1, kPauli, kDepol1, kCnot, kDepol2, kDamp };

struct Op {
    OpKind kind;
    int a = 0;
    int b = 0;
    uint64_t x = 0;
    uint64_t z = 0;
    Matrix2 u{};
};

std::vector<Op> compile(const ReadoutProgram& program, const NoiseSpec& noise,
                        const PauliString* twirl) {
    const int n = program.num_qubits();
    std::vector<Op> ops;
    uint64_t touched = 0;
    for (const auto& [q, u] : program.prerotations) {
        if (q < 1 || q > n) throw std::domain_error("prerotation qubit out of range");
        ops.push_back(Op{OpKind::kUnitary1, q, 0, 0, 0, u});
        touched |= qubit_bit(q);
    }
    if (twirl != nullptr) {
        if (twirl->n != n) throw std::domain_error("twirl layer size differs from register");
        ops.push_back(Op{OpKind::kPauli, 0, 0, twirl->x, twirl->z});
        touched = (uint64_t{1} << n) - 1;
    }
    if (noise.e1 > 0.0) {
        for (int q = 1; q <= n; ++q) {
            if (touched & qubit_bit(q)) ops.push_back(Op{OpKind::kDepol1, q});
        }
    }
    const double gamma = noise.gamma();
    const auto layers = program.circuit.layers();
    const auto idle = program.circuit.idle_masks();
    for (size_t k = 0; k < layers.size(); ++k) {
        for (const Cnot& g : layers[k]) {
            ops.push_back(Op{OpKind::kCnot, g.control, g.target});
            if (noise.e2 > 0.0) ops.push_back(Op{OpKind::kDepol2, g.control, g.target});
        }
        if (gamma > 0.0) {
            for (int q = 1; q <= n; ++q) {
                if (idle[k] & qubit_bit(q)) ops.push_back(Op{OpKind::kDamp, q});
            }
        }
    }
    return ops;
}

void check_program(const StateVector& state, const ReadoutProgram& program) {
    if (state.num_qubits() != program.num_qubits()) {
        throw std::domain_error("program register size differs from state");
    }
    const uint64_t full = (uint64_t{1} << program.num_qubits()) - 1;
    if (program.measured == 0 || (program.measured & ~full)) {
        throw std::domain_error("measured qubit set is empty or out of range");
    }
}

std::vector<double> measured_marginal(std::span<const double> populations, uint64_t measured) {
    std::vector<double> out(size_t{1} << std::popcount(measured), 0.0);
    for (size_t l = 0; l < populations.size(); ++l) {
        uint64_t k = 0;
        int pos = 0;
        for (uint64_t m = measured; m; m &= m - 1, ++pos) {
            if (l & (m & (~m + 1))) k |= uint64_t{1} << pos;
        }
        out[k] += populations[l];
    }
    return out;
}

std::vector<double> pure_populations(std::span<const Complex> amps) {
    std::vector<double> p(amps.size());
    for (size_t l = 0; l < amps.size(); ++l) p[l] = std::norm(amps[l]);
    return p;
}

void cnot_inplace(std::vector<Complex>& amps, int control, int target) {
    const uint64_t c = qubit_bit(control), t = qubit_bit(target);
    for (size_t l = 0; l < amps.size(); ++l) {
        if ((l & c) && !(l & t)) std::swap(amps[l], amps[l | t]);
    }
}

// Runs every op; stochastic ops draw from `rng`.
void run_trajectory(std::vector<Complex>& amps, std::span<const Op> ops, const NoiseSpec& noise,
                    Rng& rng) {
    const double gamma = noise.gamma();
    for (const Op& op : ops) {
        switch (op.kind) {
            case OpKind::kUnitary1: detail::apply_single_qubit_inplace(amps, op.a, op.u); break;
            case OpKind::kPauli: detail::apply_pauli_inplace(amps, op.x, op.z); break;
            case OpKind::kDepol1: detail::depolarize_inplace(amps, GateSite{op.a}, noise.e1, rng); break;
            case OpKind::kCnot: cnot_inplace(amps, op.a, op.b); break;
            case OpKind::kDepol2:
                detail::depolarize_inplace(amps, GateSite{op.a, op.b}, noise.e2, rng);
                break;
            case OpKind::kDamp: detail::amplitude_damp_inplace(amps, op.a, gamma, rng); break;
        }
    }
}

// Noise-free ops only.
std::vector<Complex> run_ideal(std::span<const Complex> input, std::span<const Op> ops) {
    std::vector<Complex> amps(input.begin(), input.end());
    for (const Op& op : ops) {
        if (op.kind == OpKind::kUnitary1) detail::apply_single_qubit_inplace(amps, op.a, op.u);
        if (op.kind == OpKind::kPauli) detail::apply_pauli_inplace(amps, op.x, op.z);
        if (op.kind == OpKind::kCnot) cnot_inplace(amps, op.a, op.b);
    }
    return amps;
}

}  // namespace

size_t num_outcomes(const ReadoutProgram& program) {
    return size_t{1} << std::popcount(program.measured);
}

std::vector<double> outcome_distribution(const StateVector& state, const ReadoutProgram& program,
                                         const NoiseSpec& noise, const PauliString* twirl) {
    check_program(state, program);
    const int n = program.num_qubits();
    const auto ops = compile(program, noise, twirl);
    const ConfusionMatrix readout = noise.readout_for(program.measured, n);
    if (noise.gate_noise_free()) {
        const auto amps = run_ideal(state.amplitudes(), ops);
        return readout.apply(measured_marginal(pure_populations(amps), program.measured));
    }
    DensityMatrix rho(state);
    const double gamma = noise.gamma();
    for (const Op& op : ops) {
        switch (op.kind) {
            case OpKind::kUnitary1: rho.apply_unitary_1q(op.a, op.u); break;
            case OpKind::kPauli: rho.apply_pauli(op.x, op.z); break;
            case OpKind::kDepol1: rho.depolarize1(op.a, noise.e1); break;
            case OpKind::kCnot: rho.apply_cnot(op.a, op.b); break;
            case OpKind::kDepol2: rho.depolarize2(op.a, op.b, noise.e2); break;
            case OpKind::kDamp: rho.amplitude_damp(op.a, gamma); break;
        }
    }
    return readout.apply(measured_marginal(rho.diagonal(), program.measured));
}

std::vector<uint64_t> sample_program(const StateVector& state, const ReadoutProgram& program,
                                     const NoiseSpec& noise, const PauliString* twirl,
                                     uint64_t shots, Backend backend, const Seed& seed) {
    check_program(state, program);
    if (shots == 0) throw std::domain_error("shots must be positive");
    Rng rng = make_rng(seed);
    if (backend == Backend::kDense || noise.gate_noise_free()) {
        return detail::multinomial(outcome_distribution(state, program, noise, twirl), shots, rng);
    }
    const int n = program.num_qubits();
    const auto ops = compile(program, noise, twirl);
    const ConfusionMatrix readout = noise.readout_for(program.measured, n);
    std::vector<uint64_t> counts(num_outcomes(program), 0);

    if (noise.gamma() == 0.0) {
        // Without damping, shots whose Pauli draws all miss share one final state.
        uint64_t clean = 0;
        std::vector<Complex> amps;
        for (uint64_t s = 0; s < shots; ++s) {
            bool hit = false;
            std::vector<std::pair<size_t, int>> events;
            for (size_t k = 0; k < ops.size(); ++k) {
                const Op& op = ops[k];
                if (op.kind != OpKind::kDepol1 && op.kind != OpKind::kDepol2) continue;
                const double e = op.kind == OpKind::kDepol1 ? noise.e1 : noise.e2;
                if (uniform01(rng) < e) {
                    const int choices = op.kind == OpKind::kDepol1 ? 3 : 15;
                    events.emplace_back(k, 1 + static_cast<int>(rng() % choices));
                    hit = true;
                }
            }
            if (!hit) {
                ++clean;
                continue;
            }
            amps.assign(state.amplitudes().begin(), state.amplitudes().end());
            size_t next = 0;
            for (size_t k = 0; k < ops.size(); ++k) {
                const Op& op = ops[k];
                if (op.kind == OpKind::kUnitary1) detail::apply_single_qubit_inplace(amps, op.a, op.u);
                if (op.kind == OpKind::kPauli) detail::apply_pauli_inplace(amps, op.x, op.z);
                if (op.kind == OpKind::kCnot) cnot_inplace(amps, op.a, op.b);
                if (next < events.size() && events[next].first == k) {
                    // Letter code: two bits per qubit, (x, z) = (1,0) X, (1,1) Y, (0,1) Z.
                    const int code = events[next].second;
                    uint64_t x = 0, z = 0;
                    const int qs[2] = {op.a, op.b};
                    for (int i = 0; i < (op.kind == OpKind::kDepol1 ? 1 : 2); ++i) {
                        const int letter = (code >> (2 * i)) & 3;
                        if (letter == 1 || letter == 2) x |= qubit_bit(qs[i]);
                        if (letter == 2 || letter == 3) z |= qubit_bit(qs[i]);
                    }
                    detail::apply_pauli_inplace(amps, x, z);
                    ++next;
                }
            }
            const auto dist = readout.apply(measured_marginal(pure_populations(amps), program.measured));
            ++counts[detail::draw_index(dist, rng)];
        }
        if (clean > 0) {
            const auto amps0 = run_ideal(state.amplitudes(), ops);
            const auto dist = readout.apply(measured_marginal(pure_populations(amps0), program.measured));
            const auto extra = detail::multinomial(dist, clean, rng);
            for (size_t k = 0; k < counts.size(); ++k) counts[k] += extra[k];
        }
        return counts;
    }

    std::vector<Complex> amps;
    for (uint64_t s = 0; s < shots; ++s) {
        amps.assign(state.amplitudes().begin(), state.amplitudes().end());
        run_trajectory(amps, ops, noise, rng);
        const auto dist = readout.apply(measured_marginal(pure_populations(amps), program.measured));
        ++counts[detail::draw_index(dist, rng)];
    }
    return counts;
}

double parity_expectation(std::span<const double> dist, uint64_t outcome_mask) {
    double s = 0.0;
    for (size_t k = 0; k < dist.size(); ++k) s += parity(k & outcome_mask) ? -dist[k] : dist[k];
    return s;
}

double parity_expectation(std::span<const uint64_t> counts, uint64_t outcome_mask) {
    double s = 0.0, total = 0.0;
    for (size_t k = 0; k < counts.size(); ++k) {
        const double c = static_cast<double>(counts[k]);
        s += parity(k & outcome_mask) ? -c : c;
        total += c;
    }
    if (total == 0.0) throw std::domain_error("empty histogram");
    return s / total;
}

}  // namespace compshadow
