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

#include "compshadow/compression.hpp"
#include "compshadow/executor.hpp"
#include "compshadow/walsh.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace compshadow;
using namespace compshadow::testing;

namespace {

std::vector<Cnot> gate_list(const CnotCircuit& c) { return {c.gates().begin(), c.gates().end()}; }

/// Output bit 1 of the GF(2) action as a mask over input bits.
uint64_t first_row(const CnotCircuit& c) { return c.gf2_rows()[0]; }

}  // namespace

TEST_SUITE("compression-circuits") {

TEST_CASE("two-qubit circuits") {
    CHECK(build_compression_circuit(1, 2).empty());
    CHECK(gate_list(build_compression_circuit(2, 2)) == std::vector<Cnot>{{1, 2}, {2, 1}});
    CHECK(gate_list(build_compression_circuit(3, 2)) == std::vector<Cnot>{{2, 1}});
    const auto ex = build_exponents(2);
    CHECK_FALSE(ex.alpha_at(1, 1));
    CHECK_FALSE(ex.beta_at(1, 1));
}

TEST_CASE("n=3 circuit for j=4 uses all four gates and reads qubit 3") {
    const auto c = build_compression_circuit(4, 3);
    CHECK(c.size() == 4);
    CHECK(first_row(c) == 0b100);
}

TEST_CASE("parity circuit is the descending CNOT chain") {
    for (int n = 2; n <= 9; ++n) {
        const uint64_t all = (uint64_t{1} << n) - 1;
        const auto c = build_compression_circuit(all, n);
        std::vector<Cnot> chain;
        for (int q = n; q >= 2; --q) chain.push_back({q, q - 1});
        CHECK(gate_list(c) == chain);
        CHECK(c.depth() == n - 1);
        CHECK(build_compression_circuit(1, n).empty());
    }
    CHECK(first_row(build_compression_circuit(6, 3)) == 0b110);
}

TEST_CASE("property: first output bit is the parity of bits in j") {
    for (int n = 1; n <= 10; ++n) {
        const uint64_t dim = uint64_t{1} << n;
        for (uint64_t j = 1; j < dim; ++j) {
            const auto c = build_compression_circuit(j, n);
            CHECK(first_row(c) == j);
            CHECK(c.nearest_neighbor());
            CHECK(c.depth() <= 2 * (n - 1));
        }
    }
}

TEST_CASE("property: qubit-1 marginal equals the Walsh row on random states") {
    for (int n = 2; n <= 5; ++n) {
        const uint64_t dim = uint64_t{1} << n;
        for (uint64_t s = 0; s < 4; ++s) {
            const auto psi = haar_random_state(n, Seed{s, 31});
            const auto a = forward(psi.populations());
            for (uint64_t j = 1; j < dim; ++j) {
                const auto u = cnot_matrix(n, gate_list(build_compression_circuit(j, n)));
                CHECK(std::abs(first_qubit_zero(u, psi) - a[j]) < 1e-12);
            }
        }
    }
}

TEST_CASE("certify_family") {
    for (int n = 2; n <= 8; ++n) {
        const auto rep = certify_family(n);
        CHECK(rep.pass);
        CHECK(rep.checked > 0);
    }
    const auto swapped = certify_family(2, [](uint64_t j) {
        return j == 3 ? CnotCircuit(2, {{1, 2}}) : build_compression_circuit(j, 2);
    });
    CHECK_FALSE(swapped.pass);
    REQUIRE(swapped.witness_j.has_value());
    CHECK(*swapped.witness_j == 3);
    REQUIRE(swapped.witness_l.has_value());
    CHECK(*swapped.witness_l == 2);
    CHECK(walsh_entry(3, 1, 2) == walsh_entry(1, 1, 2));
    CHECK(walsh_entry(3, 2, 2) != walsh_entry(1, 2, 2));

    for (int n = 2; n <= 4; ++n) {
        const auto rep = certify_family(n, [n](uint64_t) { return CnotCircuit(n); });
        CHECK_FALSE(rep.pass);
        REQUIRE(rep.witness_j.has_value());
        CHECK(*rep.witness_j >= 2);
    }
}

TEST_CASE("one-depth schedules") {
    const auto p4 = build_scheduled(ScheduleVariant::kDepthL, 1, 4);
    CHECK(gate_list(p4.circuit) == std::vector<Cnot>{{2, 1}, {4, 3}});
    CHECK(p4.measured == 0b0101);
    CHECK(p4.circuit.depth() == 1);
    const auto p5 = build_scheduled(ScheduleVariant::kDepthL, 1, 5);
    CHECK(p5.measured == 0b10101);
    CHECK(p5.circuit.depth() == 1);
}

TEST_CASE("property: every scheduling variant reads the full parity") {
    for (int n = 2; n <= 6; ++n) {
        std::vector<SchedulePlan> plans;
        plans.push_back(build_scheduled(ScheduleVariant::kFirstQubit, 0, n));
        for (int k = 1; k <= n; ++k) plans.push_back(build_scheduled(ScheduleVariant::kQubitK, k, n));
        plans.push_back(build_scheduled(ScheduleVariant::kAncilla, 0, n));
        for (int l = 1; l < n; ++l) plans.push_back(build_scheduled(ScheduleVariant::kDepthL, l, n));
        for (uint64_t s = 0; s < 5; ++s) {
            const auto psi = haar_random_state(n, Seed{s, 41});
            const double direct = z_mask_expectation(psi.populations(), (uint64_t{1} << n) - 1);
            for (const auto& plan : plans) {
                CHECK(plan.circuit.depth() <= plan.depth_bound);
                const ReadoutProgram program{plan.circuit, plan.measured, {}};
                const auto dist =
                    outcome_distribution(prepare_input(plan, psi), program, NoiseSpec::ideal());
                const double value = parity_expectation(dist, num_outcomes(program) - 1);
                CHECK(std::abs(value - direct) < 1e-12);
            }
        }
    }
}

TEST_CASE("schedule variant names round trip") {
    for (auto v : {ScheduleVariant::kFirstQubit, ScheduleVariant::kQubitK, ScheduleVariant::kAncilla,
                   ScheduleVariant::kDepthL}) {
        CHECK(parse_schedule_variant(to_string(v)) == v);
    }
    CHECK_THROWS(parse_schedule_variant("zigzag"));
}

}  // TEST_SUITE
