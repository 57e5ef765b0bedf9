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

#include "compshadow/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace compshadow {

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::domain_error("qubit count " + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxQubits) + "]");
    }
}

namespace {

constexpr double kNormTol = 1e-10;

void check_length(int n, size_t len) {
    check_qubit_count(n);
    if (len != (size_t{1} << n)) {
        throw std::domain_error("vector length " + std::to_string(len) + " is not 2^" +
                                std::to_string(n));
    }
}

}  // namespace

PopulationVector::PopulationVector(int n, std::vector<double> p) : n_(n), p_(std::move(p)) {
    check_length(n_, p_.size());
    double total = 0.0;
    for (double v : p_) {
        if (v < -kNormTol || v > 1.0 + kNormTol) {
            throw std::domain_error("population entry outside [0, 1]");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > kNormTol) {
        throw std::domain_error("populations do not sum to 1");
    }
}

PopulationVector PopulationVector::from_estimate(int n, std::vector<double> p) {
    check_length(n, p.size());
    PopulationVector out;
    out.n_ = n;
    out.p_ = std::move(p);
    return out;
}

PopulationVector PopulationVector::uniform(int n) {
    check_qubit_count(n);
    const size_t dim = size_t{1} << n;
    return PopulationVector(n, std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
}

double PopulationVector::sum_of_squares() const {
    double s = 0.0;
    for (double v : p_) s += v * v;
    return s;
}

StateVector::StateVector(int n, std::vector<Complex> amps) : n_(n), amps_(std::move(amps)) {
    check_length(n_, amps_.size());
    if (std::abs(norm_sq() - 1.0) > kNormTol) {
        throw std::domain_error("state vector is not normalized");
    }
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

PopulationVector StateVector::populations() const {
    std::vector<double> p(amps_.size());
    double total = 0.0;
    for (size_t l = 0; l < amps_.size(); ++l) {
        p[l] = std::norm(amps_[l]);
        total += p[l];
    }
    for (auto& v : p) v /= total;
    return PopulationVector(n_, std::move(p));
}

double StateVector::marginal_zero_probability(uint64_t mask) const {
    double s = 0.0;
    for (size_t l = 0; l < amps_.size(); ++l) {
        if ((l & mask) == 0) s += std::norm(amps_[l]);
    }
    return s;
}

StateVector basis_state(int n, uint64_t l) {
    check_qubit_count(n);
    const size_t dim = size_t{1} << n;
    if (l >= dim) throw std::domain_error("basis index out of range");
    std::vector<Complex> amps(dim);
    amps[l] = 1.0;
    return StateVector(n, std::move(amps));
}

StateVector ghz_state(int n) {
    check_qubit_count(n);
    const size_t dim = size_t{1} << n;
    std::vector<Complex> amps(dim);
    amps[0] = amps[dim - 1] = 1.0 / std::sqrt(2.0);
    return StateVector(n, std::move(amps));
}

StateVector haar_random_state(int n, const Seed& seed) {
    check_qubit_count(n);
    Rng rng = make_rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<Complex> amps(size_t{1} << n);
    for (auto& a : amps) a = Complex(gauss(rng), gauss(rng));
    detail::renormalize(amps);
    return StateVector(n, std::move(amps));
}

StateVector product_state(std::span<const std::array<Complex, 2>> qubit_states) {
    const int n = static_cast<int>(qubit_states.size());
    check_qubit_count(n);
    std::vector<Complex> amps(size_t{1} << n, Complex(1.0));
    for (size_t l = 0; l < amps.size(); ++l) {
        for (int q = 1; q <= n; ++q) {
            amps[l] *= qubit_states[q - 1][(l & qubit_bit(q)) ? 1 : 0];
        }
    }
    detail::renormalize(amps);
    return StateVector(n, std::move(amps));
}

StateVector apply_single_qubit(const StateVector& state, int q, const Matrix2& u) {
    if (q < 1 || q > state.num_qubits()) throw std::domain_error("qubit index out of range");
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    detail::apply_single_qubit_inplace(amps, q, u);
    detail::renormalize(amps);  // absorbs rounding drift; u is unitary
    return StateVector(state.num_qubits(), std::move(amps));
}

StateVector apply_x(const StateVector& state, int q) {
    return apply_single_qubit(state, q, Matrix2{0.0, 1.0, 1.0, 0.0});
}

double z_mask_expectation(const PopulationVector& p, uint64_t mask) {
    double s = 0.0;
    for (size_t l = 0; l < p.dim(); ++l) s += parity(l & mask) ? -p[l] : p[l];
    return s;
}

namespace detail {

void apply_single_qubit_inplace(std::vector<Complex>& amps, int q, const Matrix2& u) {
    const uint64_t bit = qubit_bit(q);
    for (size_t l = 0; l < amps.size(); ++l) {
        if (l & bit) continue;
        const Complex a0 = amps[l];
        const Complex a1 = amps[l | bit];
        amps[l] = u[0] * a0 + u[1] * a1;
        amps[l | bit] = u[2] * a0 + u[3] * a1;
    }
}

void apply_pauli_inplace(std::vector<Complex>& amps, uint64_t x_mask, uint64_t z_mask) {
    // Applies X^x Z^z (Y up to a global phase); Z acts first.
    if (z_mask) {
        for (size_t l = 0; l < amps.size(); ++l) {
            if (parity(l & z_mask)) amps[l] = -amps[l];
        }
    }
    if (x_mask) {
        for (size_t l = 0; l < amps.size(); ++l) {
            const size_t m = l ^ x_mask;
            if (l < m) std::swap(amps[l], amps[m]);
        }
    }
}

void renormalize(std::vector<Complex>& amps) {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    const double scale = 1.0 / std::sqrt(s);
    for (auto& a : amps) a *= scale;
}

}  // namespace detail

}  // namespace compshadow
