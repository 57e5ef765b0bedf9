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

#include "compshadow/cnot_circuit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace compshadow {

CnotCircuit::CnotCircuit(int n, std::vector<Cnot> gates) : n_(n), gates_(std::move(gates)) {
    if (n_ < 1 || n_ > 63) throw std::domain_error("circuit qubit count out of range");
    rows_.resize(n_);
    for (int r = 0; r < n_; ++r) rows_[r] = uint64_t{1} << r;
    for (const auto& g : gates_) {
        if (g.control < 1 || g.control > n_ || g.target < 1 || g.target > n_) {
            throw std::domain_error("CNOT qubit index out of range");
        }
        if (g.control == g.target) throw std::domain_error("CNOT control equals target");
        rows_[g.target - 1] ^= rows_[g.control - 1];
    }
}

uint64_t CnotCircuit::permute(uint64_t l) const {
    uint64_t out = 0;
    for (int r = 0; r < n_; ++r) out |= static_cast<uint64_t>(parity(rows_[r] & l)) << r;
    return out;
}

CnotCircuit CnotCircuit::inverse() const {
    std::vector<Cnot> rev(gates_.rbegin(), gates_.rend());
    return CnotCircuit(n_, std::move(rev));
}

CnotCircuit CnotCircuit::then(const CnotCircuit& next) const {
    std::vector<Cnot> all = gates_;
    all.insert(all.end(), next.gates_.begin(), next.gates_.end());
    return CnotCircuit(std::max(n_, next.n_), std::move(all));
}

std::vector<std::vector<Cnot>> CnotCircuit::layers() const {
    std::vector<int> busy_until(n_ + 1, 0);
    std::vector<std::vector<Cnot>> out;
    for (const auto& g : gates_) {
        const int layer = std::max(busy_until[g.control], busy_until[g.target]);
        if (static_cast<int>(out.size()) <= layer) out.resize(layer + 1);
        out[layer].push_back(g);
        busy_until[g.control] = busy_until[g.target] = layer + 1;
    }
    return out;
}

int CnotCircuit::depth() const { return static_cast<int>(layers().size()); }

std::vector<uint64_t> CnotCircuit::idle_masks() const {
    const uint64_t all = (n_ == 64) ? ~uint64_t{0} : ((uint64_t{1} << n_) - 1);
    std::vector<uint64_t> out;
    for (const auto& layer : layers()) {
        uint64_t busy = 0;
        for (const auto& g : layer) busy |= qubit_bit(g.control) | qubit_bit(g.target);
        out.push_back(all & ~busy);
    }
    return out;
}

bool CnotCircuit::nearest_neighbor() const {
    return std::all_of(gates_.begin(), gates_.end(),
                       [](const Cnot& g) { return std::abs(g.control - g.target) == 1; });
}

namespace {

void check_fits(const StateVector& state, const CnotCircuit& circuit) {
    if (circuit.num_qubits() > state.num_qubits()) {
        throw std::domain_error("circuit acts on more qubits than the state holds");
    }
}

}  // namespace

StateVector apply_cnot_circuit(const StateVector& state, const CnotCircuit& circuit) {
    check_fits(state, circuit);
    std::vector<Complex> out(state.dim());
    const uint64_t high_mask = ~((uint64_t{1} << circuit.num_qubits()) - 1);
    for (size_t l = 0; l < state.dim(); ++l) {
        out[(l & high_mask) | circuit.permute(l)] = state[l];
    }
    return StateVector(state.num_qubits(), std::move(out));
}

StateVector apply_cnot_gates(const StateVector& state, const CnotCircuit& circuit) {
    check_fits(state, circuit);
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (const auto& g : circuit.gates()) {
        const uint64_t c = qubit_bit(g.control);
        const uint64_t t = qubit_bit(g.target);
        for (size_t l = 0; l < amps.size(); ++l) {
            if ((l & c) && !(l & t)) std::swap(amps[l], amps[l | t]);
        }
    }
    return StateVector(state.num_qubits(), std::move(amps));
}

bool gf2_invertible(std::span<const uint64_t> rows, int n) {
    std::vector<uint64_t> m(rows.begin(), rows.end());
    for (int col = 0; col < n; ++col) {
        const uint64_t bit = uint64_t{1} << col;
        int pivot = -1;
        for (int r = col; r < n; ++r) {
            if (m[r] & bit) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return false;
        std::swap(m[col], m[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r != col && (m[r] & bit)) m[r] ^= m[col];
        }
    }
    return true;
}

std::string to_text(const CnotCircuit& circuit, std::optional<uint64_t> j) {
    std::ostringstream os;
    os << "n=" << circuit.num_qubits();
    if (j) os << " j=" << *j;
    os << '\n';
    for (const auto& g : circuit.gates()) os << "CNOT " << g.control << ' ' << g.target << '\n';
    return os.str();
}

CnotCircuit circuit_from_text(std::string_view text, std::optional<uint64_t>* j) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw std::domain_error("empty circuit text");
    std::istringstream header(line);
    std::string tok;
    int n = -1;
    std::optional<uint64_t> jval;
    while (header >> tok) {
        if (tok.rfind("n=", 0) == 0) {
            n = std::stoi(tok.substr(2));
        } else if (tok.rfind("j=", 0) == 0) {
            jval = std::stoull(tok.substr(2));
        } else {
            throw std::domain_error("unexpected header token '" + tok + "'");
        }
    }
    if (n < 1) throw std::domain_error("circuit header lacks n=<n>");
    std::vector<Cnot> gates;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream gl(line);
        std::string name;
        Cnot g{};
        if (!(gl >> name >> g.control >> g.target) || name != "CNOT") {
            throw std::domain_error("malformed gate on line " + std::to_string(lineno));
        }
        gates.push_back(g);
    }
    if (j) *j = jval;
    return CnotCircuit(n, std::move(gates));
}

}  // namespace compshadow
