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

#include "compshadow/xy_model.hpp"

#include <stdexcept>

namespace compshadow {

XyModel::XyModel(int n, std::vector<double> fields) : n_(n) {
    check_qubit_count(n);
    if (n > kMaxXyQubits) throw std::domain_error("XY model limited to 10 qubits");
    if (fields.size() != static_cast<size_t>(n)) throw std::domain_error("one field per qubit");
    const Eigen::Index dim = Eigen::Index{1} << n;
    h_ = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index l = 0; l < dim; ++l) {
        double diag = 0.0;
        for (int q = 1; q <= n; ++q) diag += (l & qubit_bit(q)) ? -fields[q - 1] : fields[q - 1];
        h_(l, l) = diag;
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                const uint64_t bi = qubit_bit(i), bj = qubit_bit(j);
                if (((l & bi) != 0) == ((l & bj) != 0)) continue;
                const double coupling = 1.0 / static_cast<double>((j - i) * (j - i));
                h_(static_cast<Eigen::Index>(l ^ bi ^ bj), l) += coupling;
            }
        }
    }
    if ((h_ - h_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::logic_error("assembled XY Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h_);
    if (solver.info() != Eigen::Success) throw std::logic_error("eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

StateVector XyModel::evolve(const StateVector& initial, double t) const {
    if (initial.num_qubits() != n_) throw std::domain_error("state size differs from model");
    if (t < 0.0) throw std::domain_error("evolution time must be non-negative");
    const Eigen::Index dim = eigenvalues_.size();
    Eigen::VectorXcd psi(dim);
    for (Eigen::Index l = 0; l < dim; ++l) psi(l) = initial[static_cast<size_t>(l)];
    Eigen::VectorXcd coeffs = eigenvectors_.transpose().cast<Complex>() * psi;
    for (Eigen::Index k = 0; k < dim; ++k) coeffs(k) *= std::exp(Complex(0.0, -eigenvalues_(k) * t));
    const Eigen::VectorXcd out = eigenvectors_.cast<Complex>() * coeffs;
    std::vector<Complex> amps(out.data(), out.data() + dim);
    detail::renormalize(amps);
    return StateVector(n_, std::move(amps));
}

double XyModel::energy(const StateVector& state) const {
    const Eigen::Index dim = h_.rows();
    Eigen::VectorXcd psi(dim);
    for (Eigen::Index l = 0; l < dim; ++l) psi(l) = state[static_cast<size_t>(l)];
    return (psi.adjoint() * h_.cast<Complex>() * psi)(0).real();
}

std::vector<double> uniform_fields(int n, double b) { return std::vector<double>(n, b); }

std::vector<double> disordered_fields(int n, double lo, double hi, const Seed& seed) {
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(n);
    for (double& b : out) b = dist(rng);
    return out;
}

StateVector evolve_xy_model(int n, const std::vector<double>& fields, double t,
                            const StateVector& initial) {
    return XyModel(n, fields).evolve(initial, t);
}

StateVector neel_state(int n) {
    uint64_t l = 0;
    for (int q = 2; q <= n; q += 2) l |= qubit_bit(q);
    return basis_state(n, l);
}

}  // namespace compshadow
