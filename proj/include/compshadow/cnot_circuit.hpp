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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "compshadow/state.hpp"

namespace compshadow {

/// CNOT(control, target) with 1-based qubit labels.
struct Cnot {
    int control;
    int target;
    bool operator==(const Cnot&) const = default;
};

/// Time-ordered CNOT network together with its GF(2) action.
///
/// A CNOT-only circuit permutes basis states: |l> -> |M l>, where M is an
/// invertible n x n bit matrix. Row r of M is stored as a bitmask, so output
/// bit r is parity(row[r] & l). The matrix is built once at construction.
class CnotCircuit {
   public:
    explicit CnotCircuit(int n, std::vector<Cnot> gates = {});

    int num_qubits() const { return n_; }
    std::span<const Cnot> gates() const { return gates_; }
    size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    std::span<const uint64_t> gf2_rows() const { return rows_; }
    uint64_t permute(uint64_t l) const;

    CnotCircuit inverse() const;
    /// Gates of `next` run after the gates of this circuit.
    CnotCircuit then(const CnotCircuit& next) const;

    /// As-soon-as-possible layering of the gate list.
    std::vector<std::vector<Cnot>> layers() const;
    int depth() const;
    /// Qubits untouched in each layer, as bitmasks (one entry per layer).
    std::vector<uint64_t> idle_masks() const;
    bool nearest_neighbor() const;

    bool operator==(const CnotCircuit& other) const {
        return n_ == other.n_ && gates_ == other.gates_;
    }

   private:
    int n_;
    std::vector<Cnot> gates_;
    std::vector<uint64_t> rows_;
};

/// Fast path: amps'[M l] = amps[l].
StateVector apply_cnot_circuit(const StateVector& state, const CnotCircuit& circuit);
/// Gate-by-gate replay; reference for the fast path.
StateVector apply_cnot_gates(const StateVector& state, const CnotCircuit& circuit);

/// True when the bit matrix has full rank over GF(2).
bool gf2_invertible(std::span<const uint64_t> rows, int n);

/// Plain-text gate list: header `n=<n> j=<j>` (the j part is optional), then
/// one `CNOT c t` per line.
std::string to_text(const CnotCircuit& circuit, std::optional<uint64_t> j = std::nullopt);
CnotCircuit circuit_from_text(std::string_view text, std::optional<uint64_t>* j = nullptr);

}  // namespace compshadow
