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

#include <cstdint>
#include <utility>
#include <vector>

#include "compshadow/cnot_circuit.hpp"
#include "compshadow/noise.hpp"
#include "compshadow/pauli.hpp"
#include "compshadow/state.hpp"

namespace compshadow {

/// A readout experiment on an n-qubit register: optional single-qubit basis
/// changes and Pauli twirl (one layer), a CNOT network, then measurement of
/// the qubits in `measured`.
///
/// Noise placement: e1 depolarizing after every gate of the single-qubit
/// layer, e2 depolarizing after every CNOT, one amplitude-damping step per
/// qubit idle in each ASAP layer of the network, and the readout channel
/// `NoiseSpec::readout_for(measured, n)`.
struct ReadoutProgram {
    CnotCircuit circuit;
    uint64_t measured = 1;
    std::vector<std::pair<int, Matrix2>> prerotations;

    int num_qubits() const { return circuit.num_qubits(); }
};

enum class Backend { kTrajectory, kDense };

/// Outcome index `k` packs the measured qubits in increasing order, the
/// lowest measured qubit in bit 0.
size_t num_outcomes(const ReadoutProgram& program);

/// Exact outcome distribution under the noise model (dense channel
/// simulation, n <= kMaxDenseQubits; any n when the gates are noise-free).
std::vector<double> outcome_distribution(const StateVector& state, const ReadoutProgram& program,
                                         const NoiseSpec& noise,
                                         const PauliString* twirl = nullptr);

/// Histogram of `shots` noisy runs. The trajectory backend draws a fresh
/// noise realization per shot; the dense backend samples the exact
/// distribution.
std::vector<uint64_t> sample_program(const StateVector& state, const ReadoutProgram& program,
                                     const NoiseSpec& noise, const PauliString* twirl,
                                     uint64_t shots, Backend backend, const Seed& seed);

/// Parity-weighted mean sum_k (-1)^{parity(k & mask)} q_k.
double parity_expectation(std::span<const double> dist, uint64_t outcome_mask);
double parity_expectation(std::span<const uint64_t> counts, uint64_t outcome_mask);

}  // namespace compshadow
