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
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "compshadow/executor.hpp"
#include "compshadow/noise.hpp"
#include "compshadow/pauli.hpp"
#include "compshadow/state.hpp"
#include "compshadow/walsh.hpp"

namespace compshadow {

/// Thrown when a randomized estimator cannot produce a usable value.
class EstimationFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Measured |0>-probability of shadow j: value = zeros / shots.
struct ShadowEstimate {
    uint64_t j = 0;
    uint64_t shots = 0;
    uint64_t zeros = 0;

    double value() const { return static_cast<double>(zeros) / static_cast<double>(shots); }
    /// Binomial standard error sqrt(A(1-A)/shots) at the observed A.
    double std_error() const;
};

/// Reads qubit 1 of U_j rho U_j^dagger `shots` times.
ShadowEstimate measure_shadow(const StateVector& state, uint64_t j, uint64_t shots,
                              const NoiseSpec& noise, const Seed& seed,
                              Backend backend = Backend::kTrajectory);

/// Infinite-shot |0>-probability of shadow j under `noise`.
double exact_shadow(const StateVector& state, uint64_t j, const NoiseSpec& noise);

/// Every shadow 1 .. 2^n-1 measured with `shots` shots; A_0 = 1.
ShadowProbVector measure_all_shadows(const StateVector& state, uint64_t shots,
                                     const NoiseSpec& noise, const Seed& seed,
                                     Backend backend = Backend::kTrajectory);

/// p = W^{-1} A.
PopulationVector recover_populations(const ShadowProbVector& a);

/// Length-square sample of row i of W^{-1}.
uint64_t sample_inverse_walsh_row(uint64_t i, int n, Rng& rng);
uint64_t sample_inverse_walsh_row(uint64_t i, int n, const Seed& seed);

struct IpeParams {
    double xi = 0.2;
    double eta = 0.1;

    /// ceil(9 / xi^2) draws per mean.
    uint64_t samples_per_mean() const;
    /// ceil(6 log2(2 / eta)) means.
    uint64_t repetitions() const;
    void validate() const;
};

struct IpeResult {
    double estimate = 0.0;
    std::vector<double> means;
    uint64_t draws = 0;
    uint64_t distinct_indices = 0;
};

/// Median (lower median for an even count) of `r` means of `s` draws of
/// |A|^2 B_i / A_i, with i drawn from the length-square law of A.
IpeResult ipe(const std::function<uint64_t(Rng&)>& sample_a,
              const std::function<double(uint64_t)>& query_a,
              const std::function<double(uint64_t, Rng&)>& query_b, double norm_sq_a,
              const IpeParams& params, Rng& rng);

/// ceil(1 / eps^2) with eps = 2 xi.
uint64_t default_shots_per_query(const IpeParams& params);

/// Estimates p_a as <(W^{-1})_{a,*}, A> by IPE. Each draw measures its
/// shadow with `shots_per_query` fresh shots; 0 queries exact values.
IpeResult estimate_population(uint64_t a, const StateVector& state, const IpeParams& params,
                              uint64_t shots_per_query, const NoiseSpec& noise, const Seed& seed,
                              Backend backend = Backend::kTrajectory);

/// Single-qubit basis change taking the letter's eigenbasis to Z
/// (X: H, Y: H S^dagger).
Matrix2 basis_change(char letter);

/// Readout program of a Pauli: basis changes on X/Y letters, then U_m for the
/// support mask m, qubit 1 measured.
ReadoutProgram pauli_program(const PauliString& pauli);

struct ExpectationEstimate {
    double value = 0.0;
    double std_error = 0.0;
    uint64_t mask = 0;
    uint64_t shots = 0;
};

/// <P> = sign * (2 A_m - 1) on the basis-changed state.
ExpectationEstimate estimate_pauli_expectation(const StateVector& state, const PauliString& pauli,
                                               uint64_t shots, const NoiseSpec& noise,
                                               const Seed& seed,
                                               Backend backend = Backend::kTrajectory);

/// Exact <psi|P|psi> by dense application of P.
double exact_pauli_expectation(const StateVector& state, const PauliString& pauli);

struct LocalDensity {
    /// sites[q-1] estimates the |0> occupation of qubit q from shadow 2^{q-1}.
    std::vector<double> sites;
    double mean = 0.0;
};

LocalDensity local_density(const StateVector& state, uint64_t shots_per_site,
                           const NoiseSpec& noise, const Seed& seed,
                           Backend backend = Backend::kTrajectory);

struct ReadoutRecord {
    std::string task;
    int n = 0;
    uint64_t j = 0;
    uint64_t shots = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    Seed seed;
};

/// One JSON object on a single line.
std::string to_jsonl(const ReadoutRecord& record);

}  // namespace compshadow
