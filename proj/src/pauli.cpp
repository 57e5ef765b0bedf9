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

#include "compshadow/pauli.hpp"

#include <stdexcept>

namespace compshadow {

PauliString PauliString::parse(std::string_view text) {
    PauliString p;
    p.n = static_cast<int>(text.size());
    if (p.n < 1 || p.n > 63) throw std::domain_error("Pauli string length out of range");
    for (int q = 1; q <= p.n; ++q) {
        const uint64_t bit = qubit_bit(q);
        switch (text[q - 1]) {
            case 'I': break;
            case 'X': p.x |= bit; break;
            case 'Y': p.x |= bit; p.z |= bit; break;
            case 'Z': p.z |= bit; break;
            default: throw std::domain_error("invalid Pauli letter in '" + std::string(text) + "'");
        }
    }
    return p;
}

PauliString PauliString::from_index(int n, uint64_t index) {
    PauliString p{n, 0, 0, false};
    for (int q = 1; q <= n; ++q) {
        const uint64_t letter = index & 3;
        index >>= 2;
        const uint64_t bit = qubit_bit(q);
        if (letter == 1 || letter == 2) p.x |= bit;
        if (letter == 2 || letter == 3) p.z |= bit;
    }
    return p;
}

PauliString PauliString::random(int n, Rng& rng) {
    std::uniform_int_distribution<uint64_t> pick(0, 3);
    uint64_t index = 0;
    for (int q = n; q >= 1; --q) index = (index << 2) | pick(rng);
    return from_index(n, index);
}

char PauliString::letter(int q) const {
    const bool xb = x & qubit_bit(q);
    const bool zb = z & qubit_bit(q);
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
}

std::string PauliString::str() const {
    std::string s = negative ? "-" : "+";
    for (int q = 1; q <= n; ++q) s += letter(q);
    return s;
}

PauliString conjugate_forward(const PauliString& p, const CnotCircuit& circuit) {
    PauliString out = p;
    for (const auto& g : circuit.gates()) {
        const uint64_t c = qubit_bit(g.control);
        const uint64_t t = qubit_bit(g.target);
        const bool xc = out.x & c, zc = out.z & c, xt = out.x & t, zt = out.z & t;
        // CNOT: X_c -> X_c X_t, Z_t -> Z_c Z_t. Sign flips for X_c Z_t with
        // x_t == z_c (e.g. X_c Z_t -> -Y_c Y_t).
        if (xc && zt && (xt == zc)) out.negative = !out.negative;
        if (xc) out.x ^= t;
        if (zt) out.z ^= c;
    }
    return out;
}

}  // namespace compshadow
