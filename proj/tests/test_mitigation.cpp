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
#include <map>
#include <set>

#include "compshadow/compression.hpp"
#include "compshadow/executor.hpp"
#include "compshadow/mitigation.hpp"
#include "compshadow/readout.hpp"
#include "compshadow/walsh.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace compshadow;
using namespace compshadow::testing;

namespace {

std::string letters_of(const PauliString& p) {
    std::string s;
    for (int q = 1; q <= p.n; ++q) s += p.letter(q);
    return s;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    double d = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) d += p[i] * std::log(p[i] / std::max(q[i], 1e-300));
    }
    return d;
}

}  // namespace

TEST_SUITE("mitigation") {

TEST_CASE("property: Pauli conjugation matches the matrix oracle") {
    Rng rng = make_rng(Seed{1, 0});
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + t % 3;
        std::uniform_int_distribution<int> q(1, n);
        std::vector<Cnot> gates;
        for (int g = 0; g < 6; ++g) {
            const int c = q(rng);
            int tq = q(rng);
            while (tq == c) tq = q(rng);
            gates.push_back({c, tq});
        }
        const CnotCircuit circuit(n, gates);
        const PauliString p = PauliString::random(n, rng);
        const PauliString out = conjugate_forward(p, circuit);
        const CMatrix u = cnot_matrix(n, gates);
        const CMatrix lhs = u * pauli_matrix(letters_of(p)) * u.adjoint();
        const CMatrix rhs = (out.negative ? -1.0 : 1.0) * pauli_matrix(letters_of(out));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("twirl instances") {
    const CnotCircuit u(2, {{2, 1}});
    const auto all = twirl_instances(u, 1, 0, Seed{1, 0}, true);
    CHECK(all.size() == 16);
    std::set<std::pair<uint64_t, uint64_t>> distinct;
    for (const auto& inst : all) {
        distinct.insert({inst.layer.x, inst.layer.z});
        CHECK(inst.frame == conjugate_forward(inst.layer, u));
        if (inst.layer.is_identity()) {
            CHECK(inst.frame.is_identity());
            CHECK_FALSE(inst.flip());
        }
        if (letters_of(inst.layer) == "XI") CHECK(inst.flip());
        if (letters_of(inst.layer) == "IZ") CHECK_FALSE(inst.flip());
    }
    CHECK(distinct.size() == 16);

    const auto sampled = twirl_instances(build_compression_circuit(63, 6), 1, 24, Seed{2, 0});
    CHECK(sampled.size() == 24);
    const auto again = twirl_instances(build_compression_circuit(63, 6), 1, 24, Seed{2, 0});
    for (size_t i = 0; i < 24; ++i) CHECK(sampled[i].layer == again[i].layer);
    CHECK_THROWS(twirl_instances(CnotCircuit(7), 1, 0, Seed{}, true));
}

TEST_CASE("property: a twirled noiseless run reproduces the untwirled outcome") {
    const auto psi = haar_random_state(4, Seed{3, 0});
    const ReadoutProgram program{build_compression_circuit(13, 4), 1, {}};
    const double ideal = parity_expectation(outcome_distribution(psi, program, NoiseSpec::ideal()), 1);
    for (const auto& inst : twirl_instances(program.circuit, 1, 20, Seed{4, 0})) {
        const auto dist = outcome_distribution(psi, program, NoiseSpec::ideal(), &inst.layer);
        const double value = parity_expectation(dist, 1) * (inst.flip() ? -1.0 : 1.0);
        CHECK(std::abs(value - ideal) < 1e-12);
    }
}

TEST_CASE("noise-free mitigation is exact") {
    const auto psi = haar_random_state(3, Seed{5, 0});
    const ReadoutProgram program{build_compression_circuit(7, 3), 1, {}};
    const auto inst = twirl_instances(program.circuit, 1, 12, Seed{6, 0});
    const auto r = mitigated_expectation(psi, program, NoiseSpec::ideal(), inst, 0, Seed{7, 0},
                                         Backend::kDense);
    const double ideal = exact_pauli_expectation(psi, PauliString::parse("ZZZ"));
    CHECK(r.denominator == doctest::Approx(1.0));
    CHECK(std::abs(r.mitigated - ideal) < 1e-12);
    CHECK(std::abs(r.raw - ideal) < 1e-12);
}

TEST_CASE("exhaustive twirl cancels Pauli noise exactly") {
    NoiseSpec noise;
    noise.e1 = 0.05;
    noise.e2 = 0.1;
    const ConfusionMatrix factors[2] = {ConfusionMatrix::single(0.03, 0.08),
                                        ConfusionMatrix::single(0.01, 0.02)};
    noise.confusion = ConfusionMatrix::tensor_product(factors);
    const ReadoutProgram program{build_compression_circuit(3, 2), 1, {}};
    const auto all = twirl_instances(program.circuit, 1, 0, Seed{}, true);
    for (uint64_t s = 0; s < 10; ++s) {
        const auto psi = haar_random_state(2, Seed{s, 8});
        const double ideal = exact_pauli_expectation(psi, PauliString::parse("ZZ"));
        const auto r = mitigated_expectation(psi, program, noise, all, 0, Seed{s, 9}, Backend::kDense);
        CHECK(std::abs(r.mitigated - ideal) < 1e-6);
        CHECK(std::abs(r.raw - ideal) > 1e-3);
    }
}

TEST_CASE("degenerate reference is reported") {
    NoiseSpec noise;
    noise.e1 = 0.75;
    noise.e2 = 0.9375;
    const ReadoutProgram program{build_compression_circuit(3, 2), 1, {}};
    const auto all = twirl_instances(program.circuit, 1, 0, Seed{}, true);
    CHECK_THROWS_AS(mitigated_expectation(basis_state(2, 0), program, noise, all, 0, Seed{},
                                          Backend::kDense),
                    DegenerateReference);
}

TEST_CASE("tensor-product inversion") {
    const std::vector<ConfusionMatrix> ident(2, ConfusionMatrix::identity(1));
    const std::vector<double> freq = {0.4, 0.1, 0.2, 0.3};
    CHECK(tpn_mitigate(freq, ident, 0b11) == doctest::Approx(parity_expectation(freq, 0b11)));

    const std::vector<ConfusionMatrix> per = {ConfusionMatrix::single(0.02, 0.05),
                                              ConfusionMatrix::single(0.04, 0.01),
                                              ConfusionMatrix::single(0.03, 0.03)};
    const auto t = ConfusionMatrix::tensor_product(per);
    for (uint64_t s = 0; s < 5; ++s) {
        const auto p = haar_random_state(3, Seed{s, 10}).populations();
        const auto noisy = t.apply(p.values());
        for (uint64_t mask : {uint64_t{0b001}, uint64_t{0b101}, uint64_t{0b111}}) {
            CHECK(std::abs(tpn_mitigate(noisy, per, mask) - z_mask_expectation(p, mask)) < 1e-10);
        }
    }

    // Correlated two-qubit confusion: joint flips of both bits.
    const double c = 0.05;
    std::vector<double> col(16, 0.0);
    for (size_t in = 0; in < 4; ++in) {
        col[in * 4 + in] = 1.0 - c;
        col[in * 4 + (in ^ 3)] = c;
    }
    const ConfusionMatrix corr(2, col, ConfusionKind::kSyntheticCorrelated);
    const auto marg = corr.single_qubit_marginals();
    const std::vector<double> e1 = {0.0, 1.0, 0.0, 0.0};
    const auto noisy = corr.apply(e1);
    CHECK(std::abs(tpn_mitigate(noisy, marg, 0b11) - (-1.0)) > 0.05);
}

TEST_CASE("iterative Bayesian unfolding") {
    const std::vector<double> freq = {0.1, 0.2, 0.3, 0.4};
    const auto same = ibu_unfold(freq, ConfusionMatrix::identity(2), 30);
    for (size_t k = 0; k < 4; ++k) CHECK(same[k] == doctest::Approx(freq[k]));
    const auto prior = ibu_unfold(freq, ConfusionMatrix::identity(2), 0);
    for (size_t k = 0; k < 4; ++k) CHECK(prior[k] == doctest::Approx(0.25));

    for (uint64_t s = 0; s < 10; ++s) {
        const auto t = ConfusionMatrix::synthetic_correlated(3, 0.02, 0.0222, Seed{s, 11});
        const auto p = haar_random_state(3, Seed{s, 12}).populations();
        const auto unfolded = ibu_unfold(t.apply(p.values()), t, 30);
        CHECK(kl_divergence(p.values(), unfolded.values()) <= 1e-4);
    }
}

TEST_CASE("benchmark with all noise off is exact") {
    BenchmarkConfig cfg;
    cfg.n = 3;
    cfg.repetitions = 10;
    cfg.e1 = cfg.e2 = 0.0;
    cfg.t1_us = 0.0;
    cfg.confusion_kind = ConfusionKind::kIdentity;
    const auto report = benchmark_compare(cfg);
    CHECK(report.rows.size() == 50);
    for (const auto& s : report.summary) CHECK(s.mean_error < 1e-10);
}

TEST_CASE("readout-only noise: CompShadow beats the product baselines") {
    BenchmarkConfig cfg;
    cfg.n = 4;
    cfg.repetitions = 40;
    cfg.e1 = cfg.e2 = 0.0;
    cfg.t1_us = 0.0;
    cfg.correlation = 0.04;
    cfg.readout_error = 0.1;
    cfg.seed = Seed{13, 0};
    const auto report = benchmark_compare(cfg);
    const double cs = report.method("compshadow").mean_error;
    CHECK(cs < report.method("tpn").mean_error);
    CHECK(cs < report.method("unfolding").mean_error);
    CHECK(report.method("unfolding").mean_error > 1e-3);
}

TEST_CASE("typical noise at n=6: mitigation helps in nearly every seed") {
    BenchmarkConfig cfg;
    cfg.seed = Seed{2024, 0};
    const auto report = benchmark_compare(cfg);
    std::map<uint64_t, double> mitigated, raw;
    for (const auto& row : report.rows) {
        if (row.method == "compshadow") mitigated[row.seed] = row.error;
        if (row.method == "compshadow-raw") raw[row.seed] = row.error;
    }
    int better = 0;
    for (const auto& [seed, e] : mitigated) better += e < raw[seed];
    CHECK(better >= 90);
    CHECK(report.csv().rfind("method,n,shots,seed,error\n", 0) == 0);
    CHECK_THROWS(report.method("nonexistent"));
}

TEST_CASE("benchmark rows are deterministic across job counts") {
    BenchmarkConfig cfg;
    cfg.n = 4;
    cfg.repetitions = 8;
    cfg.shots = 2000;
    cfg.backend = Backend::kTrajectory;
    cfg.jobs = 1;
    const auto serial = benchmark_compare(cfg).csv();
    cfg.jobs = 4;
    CHECK(benchmark_compare(cfg).csv() == serial);
}

}  // TEST_SUITE
