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
#include <string>
#include <string_view>

#include "compshadow/cnot_circuit.hpp"
#include "compshadow/rng.hpp"

namespace compshadow {

/// n-qubit Pauli operator in symplectic form: qubit q carries X if bit q-1 of
/// `x` is set and Z if bit q-1 of `z` is set (both set = Y). The sign is kept
/// modulo +-1.
struct PauliString {
    int n = 0;
    uint64_t x = 0;
    uint64_t z = 0;
    bool negative = false;

    static PauliString identity(int n) { return PauliString{n, 0, 0, false}; }
    /// Letters in qubit order: text[0] acts on qubit 1.
    static PauliString parse(std::string_view text);
    /// The 4^n Paulis enumerate as index = sum_q letter_q * 4^(q-1) with
    /// letter I=0, X=1, Y=2, Z=3.
    static PauliString from_index(int n, uint64_t index);
    static PauliString random(int n, Rng& rng);

    char letter(int q) const;
    std::string str() const;
    bool is_identity() const { return x == 0 && z == 0; }
    uint64_t support() const { return x | z; }

    bool operator==(const PauliString&) const = default;
};

/// Pushes P forward through the circuit: returns U P U^dagger, which is the
/// Pauli that acts after U when P acts before it.
PauliString conjugate_forward(const PauliString& p, const CnotCircuit& circuit);

}  // namespace compshadow
