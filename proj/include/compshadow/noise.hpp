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
#include <span>
#include <string>
#include <vector>

#include "compshadow/rng.hpp"
#include "compshadow/state.hpp"

namespace compshadow {

enum class ConfusionKind { kIdentity, kTensorProduct, kSyntheticCorrelated };

std::string to_string(ConfusionKind kind);

/// Column-stochastic readout transition matrix over m measured qubits:
/// observed = T * prior, T(out, in) = P(read `out` | true `in`). Outcome
/// indices use the same bit order as basis indices (first measured qubit is
/// the least significant bit).
class ConfusionMatrix {
   public:
    ConfusionMatrix() = default;
    /// Validates shape, non-negativity and unit column sums (1e-10).
    ConfusionMatrix(int qubits, std::vector<double> column_major, ConfusionKind kind);

    static ConfusionMatrix identity(int qubits);
    /// Single-qubit matrix from flip probabilities P(1|0) and P(0|1).
    static ConfusionMatrix single(double p01, double p10);
    /// Kronecker product; `factors[0]` acts on the least significant qubit.
    static ConfusionMatrix tensor_product(std::span<const ConfusionMatrix> factors);
    /// T = (1-c) (x) T_q + c R, with R a random column-stochastic matrix and
    /// the single-qubit flips scaled so that mean_assignment_error() hits
    /// `target_error`.
    static ConfusionMatrix synthetic_correlated(int qubits, double correlation,
                                                double target_error, const Seed& seed);
    /// Block-diagonal correlations: synthetic 2-qubit blocks on (1,2), (3,4),
    /// ... and a single-qubit factor for an odd last qubit.
    static ConfusionMatrix two_local(int qubits, double correlation, double target_error,
                                     const Seed& seed);

    int qubits() const { return m_; }
    size_t dim() const { return size_t{1} << m_; }
    ConfusionKind kind() const { return kind_; }
    double operator()(size_t out, size_t in) const { return t_[in * dim() + out]; }
    bool empty() const { return m_ == 0; }

    std::vector<double> apply(std::span<const double> prior) const;

    /// Readout channel seen by the qubits in `mask` when the rest are not
    /// read: outputs of the other qubits are summed and their true values
    /// averaged uniformly. Exact for tensor products.
    ConfusionMatrix marginal(uint64_t mask) const;
    /// Per-qubit marginals, index q-1.
    std::vector<ConfusionMatrix> single_qubit_marginals() const;
    /// Mean over qubits of (P(1|0) + P(0|1)) / 2 of the single-qubit marginals.
    double mean_assignment_error() const;

   private:
    int m_ = 0;
    std::vector<double> t_;
    ConfusionKind kind_ = ConfusionKind::kIdentity;
};

/// Gate and readout noise. Depolarizing rates per gate arity, T1 damping on
/// idle windows with gamma = 1 - exp(-t_gate / t1), and a full-register
/// confusion matrix (empty = perfect readout).
struct NoiseSpec {
    double e1 = 0.0;
    double e2 = 0.0;
    double t_gate_ns = 24.0;
    double t1_us = 0.0;  // 0 disables damping
    ConfusionMatrix confusion;

    double gamma() const;
    void validate() const;
    bool gate_noise_free() const { return e1 == 0.0 && e2 == 0.0 && gamma() == 0.0; }
    /// Readout channel for the measured qubits in `mask` of an n-qubit register.
    ConfusionMatrix readout_for(uint64_t mask, int n) const;

    static NoiseSpec ideal() { return NoiseSpec{}; }
    /// Gate error rates and T1 of a superconducting processor (0.16%, 0.6%,
    /// 24 ns, 26.5 us) with the supplied confusion.
    static NoiseSpec typical(ConfusionMatrix confusion);
};

/// One gate location for the depolarizing channel: `q2 == 0` marks a
/// single-qubit gate.
struct GateSite {
    int q1;
    int q2 = 0;
};

/// Monte Carlo trajectory of the depolarizing channel after each gate: with
/// probability e a uniformly random non-identity Pauli on the gate's qubits.
StateVector apply_depolarizing_trajectory(const StateVector& state, const NoiseSpec& noise,
                                          std::span<const GateSite> gate_sites,
                                          const Seed& seed);

/// One Monte Carlo step of amplitude damping on qubit q.
StateVector apply_amplitude_damping_trajectory(const StateVector& state, double gamma, int q,
                                               const Seed& seed);

/// Outcome histogram of `shots` i.i.d. draws from T p.
std::vector<uint64_t> sample_measurement(std::span<const double> populations, uint64_t shots,
                                         const ConfusionMatrix& confusion, const Seed& seed);

namespace detail {
// In-place trajectory steps on a caller-owned buffer. Return true when a
// non-trivial branch fired.
bool depolarize_inplace(std::vector<Complex>& amps, const GateSite& site, double e, Rng& rng);
bool amplitude_damp_inplace(std::vector<Complex>& amps, int q, double gamma, Rng& rng);
/// Draws one index from a discrete distribution (entries may carry rounding
/// noise; negatives are treated as zero).
size_t draw_index(std::span<const double> dist, Rng& rng);
std::vector<uint64_t> multinomial(std::span<const double> dist, uint64_t shots, Rng& rng);
}  // namespace detail

}  // namespace compshadow
