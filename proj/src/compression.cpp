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

#include "compshadow/compression.hpp"

#include <algorithm>
#include <stdexcept>

namespace compshadow {

ExponentTable build_exponents(int n) {
    check_qubit_count(n);
    const uint64_t dim = uint64_t{1} << n;
    ExponentTable table{n, std::vector<uint64_t>(dim, 0), std::vector<uint64_t>(dim, 0)};
    for (uint64_t j = 1; j < dim; ++j) {
        for (int i = 1; i < n; ++i) {
            const uint64_t span = uint64_t{1} << i;
            if (j < span) continue;
            table.beta[j] |= uint64_t{1} << (i - 1);
            const uint64_t r = (j - span) % span + 1;  // (j - 2^i + 1) mod 2^i in [1, 2^i]
            if (r <= span / 2) table.alpha[j] |= uint64_t{1} << (i - 1);
        }
    }
    return table;
}

namespace {

CnotCircuit circuit_from_exponents(const ExponentTable& table, uint64_t j) {
    std::vector<Cnot> gates;
    for (int i = table.n - 1; i >= 1; --i) {
        if (table.alpha_at(i, j)) gates.push_back(Cnot{i, i + 1});
        if (table.beta_at(i, j)) gates.push_back(Cnot{i + 1, i});
    }
    return CnotCircuit(table.n, std::move(gates));
}

}  // namespace

CnotCircuit build_compression_circuit(uint64_t j, int n) {
    check_qubit_count(n);
    if (j == 0 || j >= (uint64_t{1} << n)) throw std::domain_error("shadow index out of range");
    return circuit_from_exponents(build_exponents(n), j);
}

CertifyReport certify_family(int n, const std::function<CnotCircuit(uint64_t)>& family) {
    check_qubit_count(n);
    CertifyReport report;
    const uint64_t dim = uint64_t{1} << n;
    for (uint64_t j = 1; j < dim; ++j) {
        const CnotCircuit u = family(j);
        if (u.num_qubits() != n) throw std::domain_error("family circuit has wrong register size");
        for (uint64_t l = 0; l < dim; ++l) {
            ++report.checked;
            const int reads_zero = (u.permute(l) & 1) == 0;
            if (reads_zero != walsh_entry(j, l, n)) {
                report.pass = false;
                report.witness_j = j;
                report.witness_l = l;
                return report;
            }
        }
    }
    return report;
}

CertifyReport certify_family(int n) {
    check_qubit_count(n);
    const ExponentTable table = build_exponents(n);
    return certify_family(n, [&](uint64_t j) { return circuit_from_exponents(table, j); });
}

std::string to_string(ScheduleVariant v) {
    switch (v) {
        case ScheduleVariant::kFirstQubit: return "first-qubit";
        case ScheduleVariant::kQubitK: return "qubit-k";
        case ScheduleVariant::kAncilla: return "ancilla";
        case ScheduleVariant::kDepthL: return "depth-l";
    }
    return "unknown";
}

ScheduleVariant parse_schedule_variant(const std::string& text) {
    for (auto v : {ScheduleVariant::kFirstQubit, ScheduleVariant::kQubitK, ScheduleVariant::kAncilla,
                   ScheduleVariant::kDepthL}) {
        if (to_string(v) == text) return v;
    }
    throw std::domain_error("unknown schedule variant '" + text + "'");
}

SchedulePlan build_scheduled(ScheduleVariant variant, int param, int n) {
    check_qubit_count(n);
    SchedulePlan plan;
    plan.variant = variant;
    plan.param = param;
    plan.logical_qubits = n;
    std::vector<Cnot> gates;
    switch (variant) {
        case ScheduleVariant::kFirstQubit:
            for (int i = n - 1; i >= 1; --i) gates.push_back(Cnot{i + 1, i});
            plan.circuit = CnotCircuit(n, std::move(gates));
            plan.measured = 1;
            plan.depth_bound = std::max(n - 1, 0);
            break;
        case ScheduleVariant::kQubitK: {
            const int k = param;
            if (k < 1 || k > n) throw std::domain_error("qubit-k requires 1 <= k <= n");
            for (int i = n - 1; i >= k; --i) gates.push_back(Cnot{i + 1, i});
            for (int i = 1; i <= k - 1; ++i) gates.push_back(Cnot{i, i + 1});
            plan.circuit = CnotCircuit(n, std::move(gates));
            plan.measured = qubit_bit(k);
            plan.depth_bound = std::max(k, n - k + 1);
            break;
        }
        case ScheduleVariant::kAncilla:
            if (n + 1 > kMaxQubits) throw std::domain_error("no room for an ancilla qubit");
            for (int i = n; i >= 1; --i) gates.push_back(Cnot{i + 1, i});
            plan.circuit = CnotCircuit(n + 1, std::move(gates));
            plan.measured = 1;
            plan.depth_bound = n;
            break;
        case ScheduleVariant::kDepthL: {
            const int l = param;
            if (l < 1 || l > n - 1) throw std::domain_error("depth-l requires 1 <= l <= n-1");
            uint64_t measured = 0;
            for (int first = 1; first <= n; first += l + 1) {
                const int last = std::min(first + l, n);
                for (int i = last - 1; i >= first; --i) gates.push_back(Cnot{i + 1, i});
                measured |= qubit_bit(first);
            }
            plan.circuit = CnotCircuit(n, std::move(gates));
            plan.measured = measured;
            plan.depth_bound = l;
            break;
        }
    }
    return plan;
}

StateVector prepare_input(const SchedulePlan& plan, const StateVector& state) {
    if (state.num_qubits() != plan.logical_qubits) {
        throw std::domain_error("state size differs from schedule");
    }
    if (plan.variant != ScheduleVariant::kAncilla) return state;
    std::vector<Complex> amps(size_t{1} << (plan.logical_qubits + 1));
    for (size_t l = 0; l < state.dim(); ++l) amps[l << 1] = state[l];
    return StateVector(plan.logical_qubits + 1, std::move(amps));
}

}  // namespace compshadow
