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

#include <Eigen/Dense>
#include <vector>

#include "compshadow/state.hpp"

namespace compshadow {

/// Largest register for dense Hamiltonian diagonalization.
inline constexpr int kMaxXyQubits = 10;

/// Long-range XY chain H = sum_{i<j} J_ij (s+_i s-_j + s-_i s+_j) + sum_j B_j Z_j
/// with J_ij = (j - i)^{-2} and Z|0> = +|0>. Diagonalized once at
/// construction.
class XyModel {
   public:
    XyModel(int n, std::vector<double> fields);

    int num_qubits() const { return n_; }
    const Eigen::MatrixXd& hamiltonian() const { return h_; }

    /// exp(-i H t) |psi>.
    StateVector evolve(const StateVector& initial, double t) const;
    double energy(const StateVector& state) const;

   private:
    int n_;
    Eigen::MatrixXd h_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

/// Fields B_j = b for every site.
std::vector<double> uniform_fields(int n, double b);
/// Fields drawn i.i.d. from U[lo, hi].
std::vector<double> disordered_fields(int n, double lo, double hi, const Seed& seed);

/// One-shot form of XyModel(n, fields).evolve(initial, t).
StateVector evolve_xy_model(int n, const std::vector<double>& fields, double t,
                            const StateVector& initial);

/// |0101...> in qubit order: even-numbered qubits excited.
StateVector neel_state(int n);

}  // namespace compshadow
