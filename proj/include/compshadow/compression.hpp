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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "compshadow/cnot_circuit.hpp"
#include "compshadow/walsh.hpp"
#include "compshadow/state.hpp"

namespace compshadow {

/// Gate exponents of U_j. Bit (i-1) of alpha[j] switches on CNOT(i, i+1) in
/// stage i; bit (i-1) of beta[j] switches on CNOT(i+1, i). Index 0 is unused.
struct ExponentTable {
    int n = 0;
    std::vector<uint64_t> alpha;
    std::vector<uint64_t> beta;

    bool alpha_at(int i, uint64_t j) const { return (alpha[j] >> (i - 1)) & 1; }
    bool beta_at(int i, uint64_t j) const { return (beta[j] >> (i - 1)) & 1; }
};

/// beta_{i,j} = [j >= 2^i];
/// alpha_{i,j} = [j >= 2^i] and r <= 2^{i-1}, where r is j - 2^i + 1 reduced
/// mod 2^i into [1, 2^i].
ExponentTable build_exponents(int n);

/// U_j for 1 <= j < 2^n. Stages run i = n-1 down to 1; inside a stage the
/// CNOT(i, i+1) gate precedes CNOT(i+1, i). Qubit 1 of U_j|l> reads
/// parity(j & l).
CnotCircuit build_compression_circuit(uint64_t j, int n);

struct CertifyReport {
    bool pass = true;
    uint64_t checked = 0;
    std::optional<uint64_t> witness_j;
    std::optional<uint64_t> witness_l;
};

/// Checks [qubit 1 of U_j|l> reads 0] == W_{j,l} for every j >= 1 and l,
/// stopping at the first failure in (j, l) row-major order.
CertifyReport certify_family(int n);
CertifyReport certify_family(int n, const std::function<CnotCircuit(uint64_t)>& family);

enum class ScheduleVariant { kFirstQubit, kQubitK, kAncilla, kDepthL };

std::string to_string(ScheduleVariant v);
ScheduleVariant parse_schedule_variant(const std::string& text);

/// A parity readout of Z^{(x)n}: after `circuit` the parity of the qubits in
/// `measured` equals the parity of the n logical input qubits. The ancilla
/// variant adds a |0> ancilla as qubit 1 of an (n+1)-qubit register.
struct SchedulePlan {
    ScheduleVariant variant = ScheduleVariant::kFirstQubit;
    int param = 0;
    int logical_qubits = 0;
    CnotCircuit circuit{1};
    uint64_t measured = 1;
    int depth_bound = 0;

    int register_qubits() const { return circuit.num_qubits(); }
};

/// `param` is k for kQubitK (1 <= k <= n) and l for kDepthL (1 <= l <= n-1);
/// it is ignored otherwise.
SchedulePlan build_scheduled(ScheduleVariant variant, int param, int n);

/// Input register for the plan (adds the ancilla when needed).
StateVector prepare_input(const SchedulePlan& plan, const StateVector& state);

}  // namespace compshadow
