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

namespace compshadow {

enum class Protocol { kDirect, kCompShadow };

std::string to_string(Protocol p);
Protocol parse_protocol(const std::string& text);

/// Outcome of sending `sent` GHZ copies through a channel that loses every
/// qubit independently with probability r. Each surviving copy is measured
/// once for Z^{(x)n}.
struct TransmissionResult {
    Protocol protocol;
    int n = 0;
    uint64_t sent = 0;
    double loss = 0.0;
    uint64_t survivors = 0;
    double estimate = 0.0;
    double error = 0.0;
    bool no_survivors = false;  // estimate set to 0, error to |0 - ideal|
};

/// All n qubits travel; a copy survives with probability (1-r)^n.
TransmissionResult transmit_direct(int n, uint64_t copies, double loss, const Seed& seed);
/// U_{2^n-1} is applied first and only qubit 1 travels; survival 1-r.
TransmissionResult transmit_compshadow(int n, uint64_t copies, double loss, const Seed& seed);
TransmissionResult transmit(Protocol protocol, int n, uint64_t copies, double loss,
                            const Seed& seed);

/// <Z^{(x)n}> of the n-qubit GHZ state.
double ghz_parity(int n);

struct RequiredCopies {
    uint64_t copies = 0;
    double median_error = 0.0;
    bool infeasible = false;  // cap reached without meeting the target
};

/// Smallest copy count whose median error over `trials` seeded runs is at
/// most `target_error`, by doubling then geometric bisection. A run without
/// survivors scores the maximal error 1. Trial k at
/// copy count c uses seed.derive(c).derive(k) for either protocol and any
/// n, so runs at different n share random numbers.
RequiredCopies required_copies(Protocol protocol, int n, double loss, double target_error,
                               const Seed& seed, int trials = 100,
                               uint64_t cap = 10'000'000);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least squares y = a x + b. With zero spread in y the fit is exact and
/// r2 = 1.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);
/// y = A exp(k x) fitted as a line through log y.
LinearFit fit_exponential(std::span<const double> x, std::span<const double> y);

std::string transmission_csv_header();
std::string to_csv_row(const TransmissionResult& r, uint64_t seed);

}  // namespace compshadow
