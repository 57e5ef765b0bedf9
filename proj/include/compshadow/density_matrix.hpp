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
#include <vector>

#include "compshadow/state.hpp"

namespace compshadow {

/// Largest register the dense channel simulator accepts (4^n entries).
inline constexpr int kMaxDenseQubits = 8;

/// Dense mixed-state simulator for small registers. Serves as the exact
/// reference for trajectory averages and as the exact-probability backend.
class DensityMatrix {
   public:
    explicit DensityMatrix(const StateVector& pure);

    int num_qubits() const { return n_; }
    size_t dim() const { return size_t{1} << n_; }
    Complex operator()(size_t r, size_t c) const { return rho_[r * dim() + c]; }

    double trace() const;
    double purity() const;
    std::vector<double> diagonal() const;

    void apply_cnot(int control, int target);
    /// rho -> P rho P for P = X^x Z^z (phase-free conjugation).
    void apply_pauli(uint64_t x_mask, uint64_t z_mask);
    void apply_unitary_1q(int q, const Matrix2& u);
    /// (1 - e) rho + e/3 sum_{P != I} P rho P on qubit q.
    void depolarize1(int q, double e);
    /// (1 - e) rho + e/15 sum_{P != I} P rho P on qubits a, b.
    void depolarize2(int a, int b, double e);
    /// Kraus pair E0 = diag(1, sqrt(1-g)), E1 = sqrt(g)|0><1| on qubit q.
    void amplitude_damp(int q, double gamma);

    /// Reduced density matrix of the qubits in `keep` (bit order preserved).
    DensityMatrix partial_trace_keep(uint64_t keep) const;

   private:
    DensityMatrix(int n, std::vector<Complex> rho) : n_(n), rho_(std::move(rho)) {}
    /// rho -> (1 - w) rho + w Tr_S(rho) (x) I/2^|S|.
    void mix_with_traced(uint64_t subset, double weight);

    int n_;
    std::vector<Complex> rho_;
};

}  // namespace compshadow
