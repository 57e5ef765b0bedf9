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

#include <cmath>
#include <numeric>

#include "compshadow/cnot_circuit.hpp"
#include "compshadow/density_matrix.hpp"
#include "compshadow/executor.hpp"
#include "compshadow/noise.hpp"
#include "compshadow/state.hpp"
#include "compshadow/xy_model.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace compshadow;
using namespace compshadow::testing;

TEST_SUITE("state-engine") {

TEST_CASE("basis and GHZ states") {
    const auto e0 = basis_state(1, 0);
    CHECK(e0[0] == Complex(1.0));
    CHECK(e0[1] == Complex(0.0));
    const auto e3 = basis_state(2, 3);
    for (size_t l = 0; l < 4; ++l) CHECK(std::abs(e3[l]) == (l == 3 ? 1.0 : 0.0));
    const auto e5 = basis_state(3, 5);
    for (size_t l = 0; l < 8; ++l) CHECK(std::abs(e5[l]) == (l == 5 ? 1.0 : 0.0));

    const auto g2 = ghz_state(2);
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(g2[0] - h) < 1e-15);
    CHECK(std::abs(g2[3] - h) < 1e-15);
    CHECK(std::abs(g2[1]) == 0.0);
    const auto p3 = ghz_state(3).populations();
    CHECK(p3[0] == doctest::Approx(0.5));
    CHECK(p3[7] == doctest::Approx(0.5));
}

TEST_CASE("Haar states are normalized and seed-deterministic") {
    for (uint64_t s = 0; s < 10; ++s) {
        const auto psi = haar_random_state(3, Seed{s, 0});
        CHECK(std::abs(psi.norm_sq() - 1.0) < 1e-10);
        const auto again = haar_random_state(3, Seed{s, 0});
        for (size_t l = 0; l < psi.dim(); ++l) CHECK(psi[l] == again[l]);
    }
}

TEST_CASE("state validation rejects bad input") {
    CHECK_THROWS(StateVector(2, {1.0, 0.0, 0.0}));
    CHECK_THROWS(StateVector(1, {1.0, 1.0}));
    CHECK_THROWS(PopulationVector(1, {0.7, 0.7}));
    CHECK_THROWS(basis_state(15, 0));
}

TEST_CASE("CNOT(2,1) swaps the last two amplitudes") {
    const std::vector<Complex> amps = {0.1, 0.2, std::sqrt(0.3), std::sqrt(0.65)};
    const StateVector s(2, amps);
    const CnotCircuit c(2, {{2, 1}});
    const auto out = apply_cnot_circuit(s, c);
    CHECK(out[0] == amps[0]);
    CHECK(out[1] == amps[1]);
    CHECK(out[2] == amps[3]);
    CHECK(out[3] == amps[2]);
}

TEST_CASE("empty circuit is the identity") {
    const auto psi = haar_random_state(3, Seed{7, 0});
    const auto out = apply_cnot_circuit(psi, CnotCircuit(3));
    for (size_t l = 0; l < psi.dim(); ++l) CHECK(out[l] == psi[l]);
}

TEST_CASE("property: random circuits match the matrix oracle and invert") {
    Rng rng = make_rng(Seed{11, 0});
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 5;
        std::uniform_int_distribution<int> q(1, n);
        std::vector<Cnot> gates;
        for (int g = 0; g < 12; ++g) {
            const int c = q(rng);
            int t = q(rng);
            while (t == c) t = q(rng);
            gates.push_back({c, t});
        }
        const CnotCircuit circuit(n, gates);
        const auto psi = haar_random_state(n, Seed{100 + static_cast<uint64_t>(trial), 0});
        const CVector expect = cnot_matrix(n, gates) * to_eigen(psi);
        const auto fast = apply_cnot_circuit(psi, circuit);
        const auto slow = apply_cnot_gates(psi, circuit);
        for (size_t l = 0; l < psi.dim(); ++l) {
            CHECK(std::abs(fast[l] - expect(l)) < 1e-12);
            CHECK(std::abs(slow[l] - expect(l)) < 1e-12);
        }
        const auto back = apply_cnot_circuit(fast, circuit.inverse());
        for (size_t l = 0; l < psi.dim(); ++l) CHECK(std::abs(back[l] - psi[l]) < 1e-12);
        CHECK(gf2_invertible(circuit.gf2_rows(), n));
    }
}

TEST_CASE("circuit text round trip and layering") {
    const CnotCircuit c(4, {{4, 3}, {2, 1}, {3, 2}});
    std::optional<uint64_t> j;
    const auto parsed = circuit_from_text(to_text(c, 9), &j);
    CHECK(parsed == c);
    REQUIRE(j.has_value());
    CHECK(*j == 9);
    CHECK(c.depth() == 2);
    const auto idle = c.idle_masks();
    REQUIRE(idle.size() == 2);
    CHECK(idle[0] == 0);
    CHECK(idle[1] == 0b1001);
    CHECK(c.nearest_neighbor());
    CHECK_FALSE(CnotCircuit(3, {{1, 3}}).nearest_neighbor());
    CHECK_THROWS(CnotCircuit(2, {{1, 1}}));
    CHECK_THROWS(CnotCircuit(2, {{1, 3}}));
}

TEST_CASE("depolarizing trajectories") {
    NoiseSpec off;
    const auto psi = haar_random_state(1, Seed{3, 0});
    const GateSite site{1};
    const auto same = apply_depolarizing_trajectory(psi, off, std::span(&site, 1), Seed{1, 0});
    CHECK(fidelity(same, psi) == doctest::Approx(1.0).epsilon(1e-12));

    NoiseSpec always;
    always.e1 = 1.0;
    for (uint64_t s = 0; s < 200; ++s) {
        const auto out = apply_depolarizing_trajectory(psi, always, std::span(&site, 1), Seed{s, 1});
        CHECK(fidelity(out, psi) < 1.0 - 1e-6);
    }

    NoiseSpec noise;
    noise.e1 = 0.3;
    const auto zero = basis_state(1, 0);
    const int trials = 100000;
    int flips = 0;
    for (int t = 0; t < trials; ++t) {
        const auto out = apply_depolarizing_trajectory(zero, noise, std::span(&site, 1),
                                                       Seed{5, static_cast<uint64_t>(t)});
        flips += std::norm(out[1]) > 0.5;
    }
    CHECK(std::abs(static_cast<double>(flips) / trials - 0.2) < 0.01);
}

TEST_CASE("amplitude damping trajectories") {
    const auto one = basis_state(1, 1);
    const auto kept = apply_amplitude_damping_trajectory(one, 0.0, 1, Seed{1, 0});
    CHECK(std::norm(kept[1]) == doctest::Approx(1.0));
    for (uint64_t s = 0; s < 20; ++s) {
        const auto out = apply_amplitude_damping_trajectory(one, 1.0, 1, Seed{s, 0});
        CHECK(std::norm(out[0]) == doctest::Approx(1.0));
    }
    const double gamma = 1.0 - std::exp(-24.0 / 26500.0);
    const int trials = 100000;
    int excited = 0;
    for (int t = 0; t < trials; ++t) {
        const auto out = apply_amplitude_damping_trajectory(one, gamma, 1,
                                                            Seed{9, static_cast<uint64_t>(t)});
        excited += std::norm(out[1]) > 0.5;
    }
    const double survive = std::exp(-24.0 / 26500.0);
    CHECK(survive == doctest::Approx(0.999095).epsilon(1e-6));
    const double sigma = std::sqrt(survive * (1.0 - survive) / trials);
    CHECK(std::abs(static_cast<double>(excited) / trials - survive) < 3.0 * sigma);
}

TEST_CASE("measurement sampling through a confusion matrix") {
    const std::vector<double> e0 = {1.0, 0.0, 0.0, 0.0};
    const auto counts = sample_measurement(e0, 1000, ConfusionMatrix::identity(2), Seed{1, 0});
    CHECK(counts[0] == 1000);

    const auto t = ConfusionMatrix::single(0.02, 0.05);
    CHECK(t(0, 0) == doctest::Approx(0.98));
    CHECK(t(1, 0) == doctest::Approx(0.02));
    CHECK(t(0, 1) == doctest::Approx(0.05));
    const std::vector<double> p = {1.0, 0.0};
    const auto c = sample_measurement(p, 100000, t, Seed{2, 0});
    CHECK(std::abs(static_cast<double>(c[1]) / 1e5 - 0.02) < 0.005);

    const auto corr = ConfusionMatrix::synthetic_correlated(3, 0.04, 0.05, Seed{4, 0});
    const std::vector<double> mixed = {0.1, 0.2, 0.05, 0.05, 0.3, 0.1, 0.1, 0.1};
    const auto expect = corr.apply(mixed);
    const uint64_t shots = 200000;
    const auto h = sample_measurement(mixed, shots, corr, Seed{5, 0});
    for (size_t k = 0; k < 8; ++k) {
        const double sigma = std::sqrt(expect[k] * (1 - expect[k]) / shots);
        CHECK(std::abs(static_cast<double>(h[k]) / shots - expect[k]) < 3.5 * sigma);
    }
}

TEST_CASE("synthetic confusion matrices hit the requested mean error") {
    for (uint64_t s = 0; s < 5; ++s) {
        const auto t = ConfusionMatrix::synthetic_correlated(4, 0.02, 0.0222, Seed{s, 0});
        CHECK(t.mean_assignment_error() == doctest::Approx(0.0222).epsilon(1e-6));
        for (size_t in = 0; in < t.dim(); ++in) {
            double col = 0.0;
            for (size_t out = 0; out < t.dim(); ++out) col += t(out, in);
            CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
        }
        const auto two = ConfusionMatrix::two_local(5, 0.02, 0.0222, Seed{s, 1});
        CHECK(two.mean_assignment_error() == doctest::Approx(0.0222).epsilon(1e-6));
    }
}

TEST_CASE("tensor-product marginals are exact") {
    const ConfusionMatrix f[2] = {ConfusionMatrix::single(0.01, 0.04),
                                  ConfusionMatrix::single(0.03, 0.02)};
    const auto t = ConfusionMatrix::tensor_product(f);
    const auto m2 = t.marginal(0b10);
    CHECK(m2(1, 0) == doctest::Approx(0.03));
    CHECK(m2(0, 1) == doctest::Approx(0.02));
    CHECK(t(3, 0) == doctest::Approx(0.01 * 0.03));
}

TEST_CASE("dense channels match explicit Kraus sums") {
    const auto psi = haar_random_state(2, Seed{21, 0});
    const CVector v = to_eigen(psi);
    const CMatrix rho = v * v.adjoint();
    const std::string letters = "IXYZ";

    DensityMatrix d1(psi);
    d1.depolarize1(2, 0.3);
    CMatrix expect1 = 0.7 * rho;
    for (char c : std::string("XYZ")) {
        const CMatrix p = pauli_matrix(std::string("I") + c);
        expect1 += 0.1 * p * rho * p.adjoint();
    }
    DensityMatrix d2(psi);
    d2.depolarize2(1, 2, 0.15);
    CMatrix expect2 = 0.85 * rho;
    for (char a : letters)
        for (char b : letters) {
            if (a == 'I' && b == 'I') continue;
            const CMatrix p = pauli_matrix(std::string{a, b});
            expect2 += 0.01 * p * rho * p.adjoint();
        }
    DensityMatrix d3(psi);
    const double g = 0.4;
    d3.amplitude_damp(1, g);
    CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
    k0 << 1, 0, 0, std::sqrt(1 - g);
    k1 << 0, std::sqrt(g), 0, 0;
    const CMatrix i2 = CMatrix::Identity(2, 2);
    auto lift = [&](const CMatrix& k) {
        CMatrix out(4, 4);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) out.block(2 * a, 2 * b, 2, 2) = i2(a, b) * k;
        return out;
    };
    const CMatrix expect3 =
        lift(k0) * rho * lift(k0).adjoint() + lift(k1) * rho * lift(k1).adjoint();
    for (size_t r = 0; r < 4; ++r)
        for (size_t c = 0; c < 4; ++c) {
            CHECK(std::abs(d1(r, c) - expect1(r, c)) < 1e-12);
            CHECK(std::abs(d2(r, c) - expect2(r, c)) < 1e-12);
            CHECK(std::abs(d3(r, c) - expect3(r, c)) < 1e-12);
        }
    CHECK(d2.trace() == doctest::Approx(1.0));
    CHECK(DensityMatrix(psi).purity() == doctest::Approx(1.0));
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
    DensityMatrix d(ghz_state(2));
    const auto r = d.partial_trace_keep(0b01);
    CHECK(r.num_qubits() == 1);
    CHECK(r.purity() == doctest::Approx(0.5));
    CHECK(std::abs(r(0, 1)) < 1e-15);
}

TEST_CASE("trajectory histograms converge to the dense distribution") {
    const auto psi = haar_random_state(3, Seed{31, 0});
    NoiseSpec noise;
    noise.e1 = 0.02;
    noise.e2 = 0.05;
    noise.t1_us = 0.5;
    noise.confusion = ConfusionMatrix::synthetic_correlated(3, 0.05, 0.03, Seed{32, 0});
    const ReadoutProgram program{CnotCircuit(3, {{3, 2}, {2, 1}}), 0b011, {}};
    const auto dist = outcome_distribution(psi, program, noise);
    CHECK(std::accumulate(dist.begin(), dist.end(), 0.0) == doctest::Approx(1.0));
    const uint64_t shots = 40000;
    const auto counts = sample_program(psi, program, noise, nullptr, shots, Backend::kTrajectory,
                                       Seed{33, 0});
    for (size_t k = 0; k < dist.size(); ++k) {
        const double sigma = std::sqrt(dist[k] * (1 - dist[k]) / shots);
        CHECK(std::abs(static_cast<double>(counts[k]) / shots - dist[k]) < 4.0 * sigma);
    }
}

TEST_CASE("noise-free outcome distribution is the permuted marginal") {
    const auto psi = haar_random_state(3, Seed{41, 0});
    const std::vector<Cnot> gates = {{3, 2}, {2, 1}};
    const ReadoutProgram program{CnotCircuit(3, gates), 1, {}};
    const auto dist = outcome_distribution(psi, program, NoiseSpec::ideal());
    CHECK(dist[0] == doctest::Approx(first_qubit_zero(cnot_matrix(3, gates), psi)).epsilon(1e-12));
    CHECK(parity_expectation(dist, 1) == doctest::Approx(2 * dist[0] - 1));
}

TEST_CASE("XY Hamiltonian matches an independent construction") {
    const int n = 4;
    const std::vector<double> fields = {0.5, -1.0, 2.0, 0.25};
    const XyModel model(n, fields);
    const size_t dim = size_t{1} << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (size_t l = 0; l < dim; ++l) {
        for (int q = 1; q <= n; ++q) h(l, l) += fields[q - 1] * (((l >> (q - 1)) & 1) ? -1.0 : 1.0);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const bool bi = (l >> (i - 1)) & 1, bj = (l >> (j - 1)) & 1;
                if (bi != bj) h(l ^ qubit_bit(i) ^ qubit_bit(j), l) += 1.0 / ((j - i) * (j - i));
            }
    }
    CHECK((model.hamiltonian() - h).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("XY evolution conserves excitation sectors and energy") {
    const int n = 6;
    const XyModel model(n, disordered_fields(n, 7.0, 13.0, Seed{51, 0}));
    const auto start = neel_state(n);
    CHECK(std::norm(start[0b101010]) == doctest::Approx(1.0));
    const auto at0 = model.evolve(start, 0.0);
    CHECK(fidelity(at0, start) == doctest::Approx(1.0).epsilon(1e-12));

    const auto psi = haar_random_state(n, Seed{52, 0});
    auto sectors = [&](const StateVector& s) {
        std::vector<double> w(n + 1, 0.0);
        for (size_t l = 0; l < s.dim(); ++l) w[std::popcount(l)] += std::norm(s[l]);
        return w;
    };
    const auto w0 = sectors(psi);
    const double e0 = model.energy(psi);
    for (double t : {0.3, 1.7, 4.0}) {
        const auto out = model.evolve(psi, t);
        const auto w = sectors(out);
        for (int k = 0; k <= n; ++k) CHECK(std::abs(w[k] - w0[k]) < 1e-9);
        CHECK(std::abs(model.energy(out) - e0) < 1e-9);
    }
}

}  // TEST_SUITE
