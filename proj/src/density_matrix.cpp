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

#include "compshadow/density_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace compshadow {

DensityMatrix::DensityMatrix(const StateVector& pure) : n_(pure.num_qubits()) {
    if (n_ > kMaxDenseQubits) throw std::domain_error("register too large for dense simulation");
    const size_t d = dim();
    rho_.resize(d * d);
    for (size_t r = 0; r < d; ++r) {
        for (size_t c = 0; c < d; ++c) rho_[r * d + c] = pure[r] * std::conj(pure[c]);
    }
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (size_t r = 0; r < dim(); ++r) t += rho_[r * dim() + r].real();
    return t;
}

double DensityMatrix::purity() const {
    double s = 0.0;
    for (const auto& v : rho_) s += std::norm(v);  // Hermitian: Tr rho^2 = sum |rho_rc|^2
    return s;
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> p(dim());
    for (size_t r = 0; r < dim(); ++r) p[r] = rho_[r * dim() + r].real();
    return p;
}

void DensityMatrix::apply_cnot(int control, int target) {
    const uint64_t c = qubit_bit(control), t = qubit_bit(target);
    auto perm = [&](size_t l) { return (l & c) ? (l ^ t) : l; };
    const size_t d = dim();
    std::vector<Complex> out(d * d);
    for (size_t r = 0; r < d; ++r) {
        const size_t pr = perm(r);
        for (size_t col = 0; col < d; ++col) out[pr * d + perm(col)] = rho_[r * d + col];
    }
    rho_ = std::move(out);
}

void DensityMatrix::apply_pauli(uint64_t x_mask, uint64_t z_mask) {
    const size_t d = dim();
    std::vector<Complex> out(d * d);
    for (size_t r = 0; r < d; ++r) {
        for (size_t c = 0; c < d; ++c) {
            // <r| X^x Z^z rho Z^z X^x |c> = (-1)^{z.(r^x) + z.(c^x)} rho[r^x, c^x]
            const size_t rr = r ^ x_mask, cc = c ^ x_mask;
            const int sign = parity(rr & z_mask) ^ parity(cc & z_mask);
            out[r * d + c] = sign ? -rho_[rr * d + cc] : rho_[rr * d + cc];
        }
    }
    rho_ = std::move(out);
}

void DensityMatrix::apply_unitary_1q(int q, const Matrix2& u) {
    const uint64_t bit = qubit_bit(q);
    const size_t d = dim();
    // Left multiply, then right multiply by u^dagger.
    for (size_t c = 0; c < d; ++c) {
        for (size_t r = 0; r < d; ++r) {
            if (r & bit) continue;
            const Complex a0 = rho_[r * d + c], a1 = rho_[(r | bit) * d + c];
            rho_[r * d + c] = u[0] * a0 + u[1] * a1;
            rho_[(r | bit) * d + c] = u[2] * a0 + u[3] * a1;
        }
    }
    for (size_t r = 0; r < d; ++r) {
        for (size_t c = 0; c < d; ++c) {
            if (c & bit) continue;
            const Complex a0 = rho_[r * d + c], a1 = rho_[r * d + (c | bit)];
            rho_[r * d + c] = a0 * std::conj(u[0]) + a1 * std::conj(u[1]);
            rho_[r * d + (c | bit)] = a0 * std::conj(u[2]) + a1 * std::conj(u[3]);
        }
    }
}

void DensityMatrix::mix_with_traced(uint64_t subset, double weight) {
    if (weight == 0.0) return;
    const size_t d = dim();
    const double norm = 1.0 / static_cast<double>(size_t{1} << std::popcount(subset));
    std::vector<Complex> out(d * d);
    for (size_t r = 0; r < d; ++r) {
        for (size_t c = 0; c < d; ++c) {
            Complex traced = 0.0;
            if ((r & subset) == (c & subset)) {
                const size_t rb = r & ~subset, cb = c & ~subset;
                // Enumerate all assignments s of the subset bits.
                for (uint64_t s = subset;; s = (s - 1) & subset) {
                    traced += rho_[(rb | s) * d + (cb | s)];
                    if (s == 0) break;
                }
                traced *= norm;
            }
            out[r * d + c] = (1.0 - weight) * rho_[r * d + c] + weight * traced;
        }
    }
    rho_ = std::move(out);
}

void DensityMatrix::depolarize1(int q, double e) {
    // sum over all four Paulis of P rho P equals 2 Tr_q(rho) (x) I.
    mix_with_traced(qubit_bit(q), 4.0 * e / 3.0);
}

void DensityMatrix::depolarize2(int a, int b, double e) {
    mix_with_traced(qubit_bit(a) | qubit_bit(b), 16.0 * e / 15.0);
}

void DensityMatrix::amplitude_damp(int q, double gamma) {
    if (gamma == 0.0) return;
    const uint64_t bit = qubit_bit(q);
    const size_t d = dim();
    const double keep = std::sqrt(1.0 - gamma);
    std::vector<Complex> out(d * d);
    for (size_t r = 0; r < d; ++r) {
        for (size_t c = 0; c < d; ++c) {
            const bool r1 = r & bit, c1 = c & bit;
            Complex v = rho_[r * d + c];
            // E0 rho E0^dagger
            if (r1) v *= keep;
            if (c1) v *= keep;
            // E1 rho E1^dagger moves the |1><1| block onto |0><0|.
            if (!r1 && !c1) v += gamma * rho_[(r | bit) * d + (c | bit)];
            out[r * d + c] = v;
        }
    }
    rho_ = std::move(out);
}

DensityMatrix DensityMatrix::partial_trace_keep(uint64_t keep) const {
    const size_t d = dim();
    keep &= d - 1;
    const int k = std::popcount(keep);
    if (k == 0) throw std::domain_error("partial trace keeps no qubits");
    const size_t dk = size_t{1} << k;
    auto compact = [&](size_t l) {
        size_t out = 0;
        int pos = 0;
        for (int q = 0; q < n_; ++q) {
            if (keep & (uint64_t{1} << q)) {
                if (l & (size_t{1} << q)) out |= size_t{1} << pos;
                ++pos;
            }
        }
        return out;
    };
    std::vector<Complex> out(dk * dk);
    for (size_t r = 0; r < d; ++r) {
        for (size_t c = 0; c < d; ++c) {
            if ((r & ~keep) != (c & ~keep)) continue;
            out[compact(r) * dk + compact(c)] += rho_[r * d + c];
        }
    }
    return DensityMatrix(k, std::move(out));
}

}  // namespace compshadow
