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

#include "compshadow/executor.hpp"
#include "compshadow/noise.hpp"
#include "compshadow/readout.hpp"
#include "compshadow/state.hpp"

namespace compshadow {

/// The 24 single-qubit Cliffords modulo global phase, identity first.
const std::vector<Matrix2>& clifford24();

/// d_j = 3^{popcount(j)} 2^{2-n} for j >= 1.
double d_entry(uint64_t j, int n);
/// |d|^2 = 2^{4-2n} (10^n - 1).
double d_norm_sq(int n);
/// Length-square sample of d: bits are 1 with probability 0.9, all-zero
/// draws are rejected.
uint64_t sample_d(int n, Rng& rng);
uint64_t sample_d(int n, const Seed& seed);

/// N0 N1 / (N (N - 1)), an unbiased estimate of A(1 - A) from N Bernoulli
/// outcomes with N0 zeros.
double unbiased_quadratic(uint64_t zeros, uint64_t ones);
double unbiased_quadratic(std::span<const int> outcomes);

/// 2^k + sum_{j >= 1} d_j (A_j^2 - A_j) over a k-qubit shadow vector.
double purity_round_value(std::span<const double> a, int k);

enum class RenyiPath { kSampled, kDenseSum };

struct RenyiOptions {
    int rounds = 50;
    uint64_t shots = 10000;  // per shadow query; 0 queries exact values
    RenyiPath path = RenyiPath::kDenseSum;
    IpeParams ipe{0.2, 0.1};
    Backend backend = Backend::kTrajectory;
};

struct RenyiEstimate {
    double s2 = 0.0;
    double mean = 0.0;       // purity estimate before the log
    double std_error = 0.0;  // delta-method error of s2 from the round spread
    bool clamped = false;
    std::vector<double> round_values;
};

/// Second-order Renyi entropy of the qubits in `subsystem` from randomized
/// measurements: each round applies a random Clifford per qubit and
/// evaluates the round value from the rotated shadows j within the
/// subsystem. The round mean is clamped into [2^{-k}, 2^k] before the log;
/// a nonpositive mean throws EstimationFailure.
RenyiEstimate renyi2_compshadow(const StateVector& state, uint64_t subsystem,
                                const RenyiOptions& options, const NoiseSpec& noise,
                                const Seed& seed);

/// -log2 of the round value averaged exactly over the 3^k local measurement
/// bases (equal to the average over all Clifford layers).
double renyi2_exact_average(const StateVector& state, uint64_t subsystem);
/// Same average over all 24^k Clifford layers; small k only.
double renyi2_clifford_average(const StateVector& state, uint64_t subsystem);

/// Tr rho_S^2 from the amplitudes.
double subsystem_purity(const StateVector& state, uint64_t subsystem);
double renyi2_exact(const StateVector& state, uint64_t subsystem);

struct RmiEstimate {
    double i2 = 0.0;
    RenyiEstimate a, b, ab;
};

/// S2(A) + S2(B) - S2(AB); the three entropies share every round's Clifford
/// layer and, on the dense-sum path, its shadow data.
RmiEstimate rmi(const StateVector& state, uint64_t a, uint64_t b, const RenyiOptions& options,
                const NoiseSpec& noise, const Seed& seed);
double rmi_exact(const StateVector& state, uint64_t a, uint64_t b);

struct Fig3Config {
    int n = 6;
    uint64_t subsystem = 0b111;
    uint64_t pair_adjacent_a = 0b1, pair_adjacent_b = 0b10;
    uint64_t pair_distant_a = 0b1, pair_distant_b = 0b100000;
    std::vector<double> times;  // empty = 0, 0.25, ..., 5
    double field = 10.0;
    double disorder_lo = 7.0, disorder_hi = 13.0;
    RenyiOptions options;
    int repetitions = 100;
    bool include_rmi = true;
    Seed seed;
    int jobs = 1;
};

struct Fig3Row {
    double t;
    std::string series;  // fixed, disorder, rmi-adjacent, rmi-distant
    double estimate;
    double theory;
    double std_error;
    uint64_t seed;
    int failures;
};

/// Neel-state evolution under fixed and disordered fields; per time point
/// the mean and standard error over repetitions of the CompShadow estimate
/// next to the dense value.
std::vector<Fig3Row> fig3_experiment(const Fig3Config& config);
std::string fig3_csv(const std::vector<Fig3Row>& rows);

}  // namespace compshadow
