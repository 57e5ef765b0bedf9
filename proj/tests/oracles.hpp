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
#include <cmath>
#include <complex>

#include "compshadow/cnot_circuit.hpp"
#include "compshadow/pauli.hpp"
#include "compshadow/state.hpp"

namespace compshadow::testing {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline CVector to_eigen(const StateVector& s) {
    CVector v(s.dim());
    for (size_t l = 0; l < s.dim(); ++l) v(l) = s[l];
    return v;
}

inline CMatrix pauli_1q(char c) {
    CMatrix m = CMatrix::Zero(2, 2);
    const Complex i(0.0, 1.0);
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -i, i, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
    }
    return m;
}

/// Kronecker product with qubit 1 as the least significant factor.
inline CMatrix pauli_matrix(const std::string& letters) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (char c : letters) {
        const CMatrix f = pauli_1q(c);
        CMatrix next(out.rows() * 2, out.cols() * 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) = f(a, b) * out;
        out = next;
    }
    return out;
}

/// Permutation matrix of a CNOT list, built gate by gate from bit flips.
inline CMatrix cnot_matrix(int n, const std::vector<Cnot>& gates) {
    const size_t dim = size_t{1} << n;
    CMatrix u = CMatrix::Identity(dim, dim);
    for (const auto& g : gates) {
        CMatrix step = CMatrix::Zero(dim, dim);
        for (size_t l = 0; l < dim; ++l) {
            const size_t out = ((l >> (g.control - 1)) & 1) ? l ^ (size_t{1} << (g.target - 1)) : l;
            step(out, l) = 1.0;
        }
        u = step * u;
    }
    return u;
}

inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(to_eigen(a).dot(to_eigen(b)));
}

/// Probability that qubit 1 reads |0> after the permutation U.
inline double first_qubit_zero(const CMatrix& u, const StateVector& s) {
    const CVector out = u * to_eigen(s);
    double p = 0.0;
    for (Eigen::Index l = 0; l < out.size(); l += 2) p += std::norm(out(l));
    return p;
}

}  // namespace compshadow::testing
