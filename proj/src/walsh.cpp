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

#include "compshadow/walsh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace compshadow {

namespace {

int log2_exact(size_t size) {
    if (size == 0 || (size & (size - 1)) != 0) {
        throw std::domain_error("transform length must be a power of two");
    }
    return std::countr_zero(size);
}

}  // namespace

ShadowProbVector::ShadowProbVector(int n, std::vector<double> a) : n_(n), a_(std::move(a)) {
    check_qubit_count(n);
    if (a_.size() != (size_t{1} << n)) throw std::domain_error("shadow vector length must be 2^n");
    if (a_[0] != 1.0) throw std::domain_error("shadow vector requires A_0 = 1");
}

int walsh_entry(uint64_t j, uint64_t l, int n) {
    const uint64_t dim = uint64_t{1} << n;
    if (j >= dim || l >= dim) throw std::domain_error("Walsh index out of range");
    return parity(j & l) ? 0 : 1;
}

void fwht_inplace(std::span<double> v) {
    log2_exact(v.size());
    for (size_t h = 1; h < v.size(); h <<= 1) {
        for (size_t base = 0; base < v.size(); base += h << 1) {
            for (size_t k = base; k < base + h; ++k) {
                const double a = v[k], b = v[k + h];
                v[k] = a + b;
                v[k + h] = a - b;
            }
        }
    }
}

std::vector<double> fwht(std::span<const double> v) {
    std::vector<double> out(v.begin(), v.end());
    fwht_inplace(out);
    return out;
}

ShadowProbVector forward(const PopulationVector& p) {
    double total = 0.0;
    for (double x : p.values()) total += x;
    if (std::abs(total - 1.0) > 1e-10) throw std::domain_error("populations are not normalized");
    auto a = fwht(p.values());
    for (double& x : a) x = 0.5 * (x + 1.0);
    a[0] = 1.0;
    return ShadowProbVector(p.num_qubits(), std::move(a));
}

PopulationVector inverse(const ShadowProbVector& a) {
    const int n = a.num_qubits();
    auto p = fwht(a.values());
    const double scale = std::ldexp(1.0, 1 - n);
    for (double& x : p) x *= scale;
    p[0] -= 1.0;
    return PopulationVector::from_estimate(n, std::move(p));
}

InverseRowStats inverse_row_stats(uint64_t i, int n) {
    check_qubit_count(n);
    if (i >= (uint64_t{1} << n)) throw std::domain_error("row index out of range");
    const double other = std::ldexp(1.0, 2 - 2 * n);
    if (i == 0) {
        const double corner = std::ldexp(1.0, 1 - n) - 1.0;
        return InverseRowStats{1.0, corner * corner, other};
    }
    return InverseRowStats{std::ldexp(1.0, 2 - n), other, other};
}

double inverse_walsh_entry(uint64_t i, uint64_t j, int n) {
    const double v = parity(i & j) ? -std::ldexp(1.0, 1 - n) : std::ldexp(1.0, 1 - n);
    return (i == 0 && j == 0) ? v - 1.0 : v;
}

double inverse_frobenius_sq(int n) { return 5.0 - std::ldexp(1.0, 2 - n); }

std::vector<double> clamp01(std::span<const double> a) {
    std::vector<double> out(a.begin(), a.end());
    for (double& x : out) x = std::clamp(x, 0.0, 1.0);
    return out;
}

}  // namespace compshadow
