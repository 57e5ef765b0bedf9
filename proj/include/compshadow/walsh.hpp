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
#include <vector>

#include "compshadow/state.hpp"

namespace compshadow {

/// Shadow |0>-probabilities A_j, j = 0 .. 2^n - 1, with A_0 = 1.
///
/// Ideal values lie in [0, 1]; finite-shot estimates may not and are kept as
/// measured so that downstream estimators stay unbiased.
class ShadowProbVector {
   public:
    ShadowProbVector() = default;
    /// Requires length 2^n and A_0 == 1 exactly.
    ShadowProbVector(int n, std::vector<double> a);

    int num_qubits() const { return n_; }
    size_t dim() const { return a_.size(); }
    double operator[](size_t j) const { return a_[j]; }
    std::span<const double> values() const { return a_; }

   private:
    int n_ = 0;
    std::vector<double> a_;
};

/// (1 + (-1)^{popcount(j & l)}) / 2.
int walsh_entry(uint64_t j, uint64_t l, int n);

/// In-place unnormalized Walsh-Hadamard butterfly: v <- H^{(x)n} v.
void fwht_inplace(std::span<double> v);
std::vector<double> fwht(std::span<const double> v);

/// A = W p = (H p + 1) / 2.
ShadowProbVector forward(const PopulationVector& p);
/// p = 2^{1-n} H A - e_0. Entries are not clipped.
PopulationVector inverse(const ShadowProbVector& a);

struct InverseRowStats {
    double row_norm_sq;
    double entry_sq_first;  // (W^{-1})_{i,0}^2
    double entry_sq_other;  // (W^{-1})_{i,j}^2 for j != 0
};

/// Squared entries of row i of W^{-1}.
InverseRowStats inverse_row_stats(uint64_t i, int n);
/// (W^{-1})_{i,j} = 2^{1-n} (-1)^{popcount(i & j)} - [i = j = 0].
double inverse_walsh_entry(uint64_t i, uint64_t j, int n);
/// Squared Frobenius norm of W^{-1}: 5 - 2^{2-n}.
double inverse_frobenius_sq(int n);

/// Copy of A with every entry clipped to [0, 1], for display only.
std::vector<double> clamp01(std::span<const double> a);

}  // namespace compshadow
