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

#include <Eigen/Dense>
#include <cmath>

#include "compshadow/state.hpp"
#include "compshadow/walsh.hpp"
#include "doctest.h"

using namespace compshadow;

namespace {

/// (H^{(x)n} + E) / 2 from the Kronecker definition.
Eigen::MatrixXd walsh_oracle(int n) {
    Eigen::MatrixXd h(1, 1);
    h(0, 0) = 1.0;
    Eigen::Matrix2d h1;
    h1 << 1, 1, 1, -1;
    for (int q = 0; q < n; ++q) {
        Eigen::MatrixXd next(h.rows() * 2, h.cols() * 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) next.block(a * h.rows(), b * h.cols(), h.rows(), h.cols()) = h1(a, b) * h;
        h = next;
    }
    return (h + Eigen::MatrixXd::Ones(h.rows(), h.cols())) / 2.0;
}

PopulationVector random_p(int n, uint64_t seed) {
    return haar_random_state(n, Seed{seed, 77}).populations();
}

}  // namespace

TEST_SUITE("walsh") {

TEST_CASE("Walsh entries match the Kronecker oracle") {
    for (int n = 1; n <= 5; ++n) {
        const auto w = walsh_oracle(n);
        const uint64_t dim = uint64_t{1} << n;
        for (uint64_t j = 0; j < dim; ++j)
            for (uint64_t l = 0; l < dim; ++l) {
                CHECK(walsh_entry(j, l, n) == w(j, l));
                CHECK(walsh_entry(j, l, n) == walsh_entry(l, j, n));
            }
        for (uint64_t k = 0; k < dim; ++k) {
            CHECK(walsh_entry(0, k, n) == 1);
            CHECK(walsh_entry(k, 0, n) == 1);
        }
    }
    Eigen::MatrixXd w2(4, 4);
    w2 << 1, 1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0, 0, 1;
    CHECK(walsh_oracle(2) == w2);
}

TEST_CASE("fast Walsh-Hadamard transform") {
    std::vector<double> v = {1, 2, 3, 4};
    const auto out = fwht(v);
    CHECK(out == std::vector<double>{10, -2, -4, 0});

    std::vector<double> e0(8, 0.0);
    e0[0] = 1.0;
    CHECK(fwht(e0) == std::vector<double>(8, 1.0));

    Rng rng = make_rng(Seed{3, 0});
    std::vector<double> r(64);
    for (auto& x : r) x = uniform01(rng) - 0.5;
    auto twice = r;
    fwht_inplace(twice);
    fwht_inplace(twice);
    for (size_t i = 0; i < r.size(); ++i) CHECK(twice[i] == doctest::Approx(64.0 * r[i]));

    std::vector<double> bad(3, 0.0);
    CHECK_THROWS(fwht_inplace(bad));
}

TEST_CASE("forward transform examples") {
    const auto a = forward(PopulationVector::uniform(2));
    CHECK(a[0] == 1.0);
    for (size_t j = 1; j < 4; ++j) CHECK(a[j] == doctest::Approx(0.5));
    CHECK(forward(ghz_state(3).populations())[7] == doctest::Approx(0.5));

    for (uint64_t l = 0; l < 16; ++l) {
        const auto al = forward(basis_state(4, l).populations());
        double spread = 0.0;
        for (uint64_t j = 0; j < 16; ++j) {
            CHECK(al[j] == walsh_entry(j, l, 4));
            spread += al[j] * (1.0 - al[j]);
        }
        CHECK(spread == 0.0);
    }
}

TEST_CASE("property: forward equals the dense product W p") {
    for (int n = 1; n <= 6; ++n) {
        const auto w = walsh_oracle(n);
        for (uint64_t s = 0; s < 5; ++s) {
            const auto p = random_p(n, s);
            Eigen::VectorXd pv(p.dim());
            for (size_t l = 0; l < p.dim(); ++l) pv(l) = p[l];
            const Eigen::VectorXd expect = w * pv;
            const auto a = forward(p);
            for (size_t j = 0; j < p.dim(); ++j) CHECK(std::abs(a[j] - expect(j)) < 1e-13);
        }
    }
}

TEST_CASE("inverse transform examples and round trip") {
    const auto p1 = inverse(ShadowProbVector(1, {1.0, 1.0}));
    CHECK(p1[0] == doctest::Approx(1.0));
    CHECK(std::abs(p1[1]) < 1e-15);
    const auto pu = inverse(ShadowProbVector(2, {1.0, 0.5, 0.5, 0.5}));
    for (size_t l = 0; l < 4; ++l) CHECK(pu[l] == doctest::Approx(0.25));
    const auto pg = inverse(forward(ghz_state(3).populations()));
    for (size_t l = 0; l < 8; ++l) CHECK(std::abs(pg[l] - ((l == 0 || l == 7) ? 0.5 : 0.0)) < 1e-12);

    for (int n = 1; n <= 10; ++n) {
        for (uint64_t s = 0; s < 5; ++s) {
            const auto p = random_p(n, 100 + s);
            const auto back = inverse(forward(p));
            for (size_t l = 0; l < p.dim(); ++l) CHECK(std::abs(back[l] - p[l]) < 1e-12);
        }
    }
    CHECK_THROWS(ShadowProbVector(1, {0.9, 1.0}));
    CHECK_THROWS(ShadowProbVector(2, {1.0, 1.0}));
}

TEST_CASE("inverse entries match the dense matrix inverse") {
    for (int n = 1; n <= 5; ++n) {
        const Eigen::MatrixXd inv = walsh_oracle(n).inverse();
        const uint64_t dim = uint64_t{1} << n;
        double frob = 0.0;
        for (uint64_t i = 0; i < dim; ++i) {
            double row = 0.0;
            for (uint64_t j = 0; j < dim; ++j) {
                CHECK(std::abs(inverse_walsh_entry(i, j, n) - inv(i, j)) < 1e-12);
                row += inv(i, j) * inv(i, j);
            }
            CHECK(inverse_row_stats(i, n).row_norm_sq == doctest::Approx(row).epsilon(1e-12));
            frob += row;
        }
        CHECK(inverse_frobenius_sq(n) == doctest::Approx(frob).epsilon(1e-12));
    }
}

TEST_CASE("inverse row statistics") {
    const auto r0 = inverse_row_stats(0, 3);
    CHECK(r0.row_norm_sq == doctest::Approx(1.0));
    CHECK(r0.entry_sq_first == doctest::Approx(9.0 / 16.0));
    for (uint64_t i = 1; i < 8; ++i) CHECK(inverse_row_stats(i, 3).row_norm_sq == doctest::Approx(0.5));
    CHECK(inverse_frobenius_sq(2) == doctest::Approx(4.0));
    for (int n = 1; n <= 12; ++n) {
        CHECK(inverse_frobenius_sq(n) == doctest::Approx(5.0 - std::ldexp(1.0, 2 - n)).epsilon(1e-12));
    }
}

TEST_CASE("property: shadow variance sum identity") {
    for (int n = 1; n <= 8; ++n) {
        for (uint64_t s = 0; s < 3; ++s) {
            const auto p = random_p(n, 200 + s);
            const auto a = forward(p);
            double lhs = 0.0;
            for (size_t j = 0; j < a.dim(); ++j) lhs += a[j] * (1.0 - a[j]);
            const double rhs = std::ldexp(1.0, n - 2) * (1.0 - p.sum_of_squares());
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    }
}

TEST_CASE("clamp01 only clips") {
    const std::vector<double> a = {1.0, -0.1, 0.4, 1.2};
    CHECK(clamp01(a) == std::vector<double>{1.0, 0.0, 0.4, 1.0});
}

}  // TEST_SUITE
