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

#include <array>
#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "compshadow/rng.hpp"

namespace compshadow {

using Complex = std::complex<double>;

/// Largest register the dense state engine accepts.
inline constexpr int kMaxQubits = 14;

inline constexpr int parity(uint64_t x) { return std::popcount(x) & 1; }

/// Bit of basis index `l` holding (1-based) qubit `q`. Qubit 1 is the least
/// significant bit.
inline constexpr uint64_t qubit_bit(int q) { return uint64_t{1} << (q - 1); }

void check_qubit_count(int n);

/// Real basis populations p_l = |<l|psi>|^2.
///
/// Exact populations satisfy 0 <= p_l <= 1 and sum to one. Estimates built
/// from finite-shot data keep the unit sum but may leave [0, 1]; those are
/// made with `from_estimate`.
class PopulationVector {
   public:
    PopulationVector() = default;
    /// Validates range and normalization (1e-10).
    PopulationVector(int n, std::vector<double> p);
    static PopulationVector from_estimate(int n, std::vector<double> p);
    static PopulationVector uniform(int n);

    int num_qubits() const { return n_; }
    size_t dim() const { return p_.size(); }
    double operator[](size_t l) const { return p_[l]; }
    std::span<const double> values() const { return p_; }
    double sum_of_squares() const;

   private:
    int n_ = 0;
    std::vector<double> p_;
};

/// Dense pure state over 2^n basis states.
class StateVector {
   public:
    /// Validates the length and the 2-norm (1e-10).
    StateVector(int n, std::vector<Complex> amps);

    int num_qubits() const { return n_; }
    size_t dim() const { return amps_.size(); }
    const Complex& operator[](size_t l) const { return amps_[l]; }
    std::span<const Complex> amplitudes() const { return amps_; }

    double norm_sq() const;
    PopulationVector populations() const;
    /// Probability that every qubit in `mask` reads |0>.
    double marginal_zero_probability(uint64_t mask) const;

   private:
    int n_;
    std::vector<Complex> amps_;
};

StateVector basis_state(int n, uint64_t l);
StateVector ghz_state(int n);
/// Normalized vector of i.i.d. complex Gaussians (Haar distributed).
StateVector haar_random_state(int n, const Seed& seed);
/// Tensor product of single-qubit states; `qubit_states[q-1]` holds (a, b)
/// for a|0> + b|1> of qubit q.
StateVector product_state(std::span<const std::array<Complex, 2>> qubit_states);

using Matrix2 = std::array<Complex, 4>;  // row-major {m00, m01, m10, m11}

StateVector apply_single_qubit(const StateVector& state, int q, const Matrix2& u);
StateVector apply_x(const StateVector& state, int q);

/// <psi| P |psi> for a Z-type string with support `mask` (exact, dense).
double z_mask_expectation(const PopulationVector& p, uint64_t mask);

namespace detail {
// In-place kernels for trajectory loops; callers own the buffer.
void apply_single_qubit_inplace(std::vector<Complex>& amps, int q, const Matrix2& u);
void apply_pauli_inplace(std::vector<Complex>& amps, uint64_t x_mask, uint64_t z_mask);
void renormalize(std::vector<Complex>& amps);
}  // namespace detail

}  // namespace compshadow
