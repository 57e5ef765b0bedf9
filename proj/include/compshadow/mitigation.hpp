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
#include <stdexcept>
#include <string>
#include <vector>

#include "compshadow/executor.hpp"
#include "compshadow/noise.hpp"
#include "compshadow/pauli.hpp"
#include "compshadow/state.hpp"

namespace compshadow {

/// The |0...0> reference expectation is too small to divide by.
class DegenerateReference : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A Pauli layer P applied before the network U and its classical frame
/// Q = U P U^dagger. Measured bits whose frame letter is X or Y are flipped.
struct TwirlInstance {
    PauliString layer;
    PauliString frame;
    /// Outcome-index bits to flip (packed like `num_outcomes` indices).
    uint64_t flip_mask = 0;

    bool flip() const { return flip_mask != 0; }
};

/// `count` layers drawn uniformly with replacement, or every one of the 4^n
/// layers (in index order) when `exhaustive` is set.
std::vector<TwirlInstance> twirl_instances(const CnotCircuit& circuit, uint64_t measured,
                                           size_t count, const Seed& seed,
                                           bool exhaustive = false);

struct MitigationResult {
    double raw = 0.0;          // untwirled noisy parity
    double numerator = 0.0;    // twirled noisy parity of the input
    double denominator = 0.0;  // twirled noisy parity of |0...0>
    double mitigated = 0.0;    // numerator / denominator
    size_t instances = 0;
    uint64_t shots = 0;
};

/// Twirl-averaged parity of the measured register, frame corrected. `shots`
/// is the total budget, split evenly over the instances; 0 uses exact
/// outcome distributions.
double twirled_parity(const StateVector& state, const ReadoutProgram& program,
                      const NoiseSpec& noise, const std::vector<TwirlInstance>& instances,
                      uint64_t shots, Backend backend, const Seed& seed);

/// Noisy parity divided by the same protocol's parity on |0...0>, which
/// shares the instances and the shot budget. Throws DegenerateReference when
/// |denominator| < 0.05.
MitigationResult mitigated_expectation(const StateVector& state, const ReadoutProgram& program,
                                       const NoiseSpec& noise,
                                       const std::vector<TwirlInstance>& instances,
                                       uint64_t shots, const Seed& seed,
                                       Backend backend = Backend::kTrajectory);

/// Applies (x)_q T_q^{-1} to the empirical distribution, then returns the
/// parity of the outcome bits in `observable_mask`.
double tpn_mitigate(const std::vector<double>& frequencies,
                    const std::vector<ConfusionMatrix>& per_qubit, uint64_t observable_mask);
double tpn_mitigate(const std::vector<uint64_t>& counts,
                    const std::vector<ConfusionMatrix>& per_qubit, uint64_t observable_mask);

/// Iterative Bayesian unfolding from the uniform prior.
PopulationVector ibu_unfold(const std::vector<double>& frequencies,
                            const ConfusionMatrix& confusion, int epochs = 30);
PopulationVector ibu_unfold(const std::vector<uint64_t>& counts, const ConfusionMatrix& confusion,
                            int epochs = 30);

/// One Fig. 2-style comparison point.
struct BenchmarkConfig {
    int n = 6;
    uint64_t shots = 0;  // 0 = infinite-shot limit
    int repetitions = 100;
    size_t instances = 0;  // 0 = 4n
    int epochs = 30;
    double e1 = 0.0016;
    double e2 = 0.006;
    double t_gate_ns = 24.0;
    double t1_us = 26.5;
    double readout_error = 0.0222;
    double correlation = 0.02;
    ConfusionKind confusion_kind = ConfusionKind::kSyntheticCorrelated;
    Backend backend = Backend::kDense;
    Seed seed;
    int jobs = 1;
};

struct BenchmarkRow {
    std::string method;
    int n;
    uint64_t shots;
    uint64_t seed;
    double error;
};

struct MethodSummary {
    std::string method;
    double mean_error = 0.0;
    double sem = 0.0;
};

struct MitigationReport {
    std::vector<BenchmarkRow> rows;
    std::vector<MethodSummary> summary;

    const MethodSummary& method(const std::string& name) const;
    std::string csv() const;
    std::string summary_json() const;
};

/// Z^{(x)n} on random computational basis states: CompShadow with twirl and
/// reference division, raw CompShadow, TPN and unfolding on a direct
/// full-register readout. TPN and unfolding invert the product of the
/// single-qubit marginals of the device confusion.
MitigationReport benchmark_compare(const BenchmarkConfig& config);

/// Fig. S5-style comparison of scheduling variants for Z^{(x)n} on random
/// basis states with twirling and reference division.
struct ScheduleBenchConfig {
    int n = 6;
    uint64_t shots = 0;  // 0 = infinite-shot limit
    int repetitions = 100;
    double e1 = 0.0016;
    double e2 = 0.006;
    double t_gate_ns = 24.0;
    double t1_us = 26.5;
    double readout_error = 0.0222;
    double correlation = 0.02;
    size_t instances_first_qubit = 0;  // 0 = 4n
    size_t instances_one_depth = 16;
    Backend backend = Backend::kDense;
    Seed seed;
    int jobs = 1;
};

/// Methods "compshadow" (first-qubit chain) and "one-depth" (depth-1
/// variant) under a 2-local correlated confusion.
MitigationReport schedule_bench(const ScheduleBenchConfig& config);

}  // namespace compshadow
