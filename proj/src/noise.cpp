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

#include "compshadow/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace compshadow {

std::string to_string(ConfusionKind kind) {
    switch (kind) {
        case ConfusionKind::kIdentity: return "identity";
        case ConfusionKind::kTensorProduct: return "tensor-product";
        case ConfusionKind::kSyntheticCorrelated: return "synthetic-correlated";
    }
    return "unknown";
}

namespace {

constexpr double kStochasticTol = 1e-10;

/// Gathers the bits of `value` selected by `mask` into the low bits.
uint64_t compact_bits(uint64_t value, uint64_t mask) {
    uint64_t out = 0;
    int k = 0;
    for (; mask; mask &= mask - 1, ++k) {
        const uint64_t low = mask & (~mask + 1);
        if (value & low) out |= uint64_t{1} << k;
    }
    return out;
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(int qubits, std::vector<double> column_major, ConfusionKind kind)
    : m_(qubits), t_(std::move(column_major)), kind_(kind) {
    if (m_ < 1 || m_ > kMaxQubits) throw std::domain_error("confusion qubit count out of range");
    const size_t d = dim();
    if (t_.size() != d * d) throw std::domain_error("confusion matrix has wrong size");
    for (size_t in = 0; in < d; ++in) {
        double col = 0.0;
        for (size_t out = 0; out < d; ++out) {
            const double v = t_[in * d + out];
            if (!(v >= 0.0)) throw std::domain_error("confusion matrix has a negative entry");
            col += v;
        }
        if (std::abs(col - 1.0) > kStochasticTol) {
            throw std::domain_error("confusion matrix column does not sum to 1");
        }
    }
}

ConfusionMatrix ConfusionMatrix::identity(int qubits) {
    const size_t d = size_t{1} << qubits;
    std::vector<double> t(d * d, 0.0);
    for (size_t i = 0; i < d; ++i) t[i * d + i] = 1.0;
    return ConfusionMatrix(qubits, std::move(t), ConfusionKind::kIdentity);
}

ConfusionMatrix ConfusionMatrix::single(double p01, double p10) {
    if (p01 < 0 || p01 > 1 || p10 < 0 || p10 > 1) {
        throw std::domain_error("flip probability outside [0, 1]");
    }
    return ConfusionMatrix(1, {1.0 - p01, p01, p10, 1.0 - p10}, ConfusionKind::kTensorProduct);
}

ConfusionMatrix ConfusionMatrix::tensor_product(std::span<const ConfusionMatrix> factors) {
    if (factors.empty()) throw std::domain_error("empty tensor product");
    int m = 0;
    for (const auto& f : factors) m += f.qubits();
    if (m > kMaxQubits) throw std::domain_error("tensor product too large");
    const size_t d = size_t{1} << m;
    std::vector<double> t(d * d, 1.0);
    for (size_t in = 0; in < d; ++in) {
        for (size_t out = 0; out < d; ++out) {
            double v = 1.0;
            int offset = 0;
            for (const auto& f : factors) {
                const uint64_t sub = (uint64_t{1} << f.qubits()) - 1;
                v *= f((out >> offset) & sub, (in >> offset) & sub);
                offset += f.qubits();
            }
            t[in * d + out] = v;
        }
    }
    bool correlated = std::any_of(factors.begin(), factors.end(), [](const ConfusionMatrix& f) {
        return f.kind() == ConfusionKind::kSyntheticCorrelated;
    });
    bool all_identity = std::all_of(factors.begin(), factors.end(), [](const ConfusionMatrix& f) {
        return f.kind() == ConfusionKind::kIdentity;
    });
    auto kind = correlated ? ConfusionKind::kSyntheticCorrelated
                           : (all_identity ? ConfusionKind::kIdentity : ConfusionKind::kTensorProduct);
    return ConfusionMatrix(m, std::move(t), kind);
}

ConfusionMatrix ConfusionMatrix::synthetic_correlated(int qubits, double correlation,
                                                      double target_error, const Seed& seed) {
    if (correlation < 0 || correlation >= 1) throw std::domain_error("correlation outside [0, 1)");
    Rng rng = make_rng(seed);
    const size_t d = size_t{1} << qubits;

    std::vector<double> r(d * d);
    for (size_t in = 0; in < d; ++in) {
        double col = 0.0;
        for (size_t out = 0; out < d; ++out) col += (r[in * d + out] = uniform01(rng));
        for (size_t out = 0; out < d; ++out) r[in * d + out] /= col;
    }
    const double random_error =
        ConfusionMatrix(qubits, r, ConfusionKind::kSyntheticCorrelated).mean_assignment_error();

    // Marginal errors are linear in T, so the product part is scaled to make
    // the blend hit the target exactly.
    const double eps = (target_error - correlation * random_error) / (1.0 - correlation);
    if (eps < 0 || eps > 0.5) {
        throw std::domain_error("target readout error unreachable with this correlation");
    }
    std::vector<ConfusionMatrix> singles;
    for (int q = 0; q < qubits; ++q) {
        const double skew = 0.6 * uniform01(rng) - 0.3;
        singles.push_back(single(eps * (1.0 - skew), eps * (1.0 + skew)));
    }
    const ConfusionMatrix product = tensor_product(singles);

    std::vector<double> t(d * d);
    for (size_t k = 0; k < d * d; ++k) {
        t[k] = (1.0 - correlation) * product.t_[k] + correlation * r[k];
    }
    return ConfusionMatrix(qubits, std::move(t), ConfusionKind::kSyntheticCorrelated);
}

ConfusionMatrix ConfusionMatrix::two_local(int qubits, double correlation, double target_error,
                                           const Seed& seed) {
    std::vector<ConfusionMatrix> blocks;
    uint64_t b = 0;
    for (int q = 1; q <= qubits; q += 2, ++b) {
        const int size = (q + 1 <= qubits) ? 2 : 1;
        blocks.push_back(synthetic_correlated(size, correlation, target_error, seed.derive(b)));
    }
    return tensor_product(blocks);
}

std::vector<double> ConfusionMatrix::apply(std::span<const double> prior) const {
    const size_t d = dim();
    if (prior.size() != d) throw std::domain_error("confusion dimension mismatch");
    std::vector<double> out(d, 0.0);
    for (size_t in = 0; in < d; ++in) {
        if (prior[in] == 0.0) continue;
        const double* col = &t_[in * d];
        for (size_t o = 0; o < d; ++o) out[o] += col[o] * prior[in];
    }
    return out;
}

ConfusionMatrix ConfusionMatrix::marginal(uint64_t mask) const {
    const uint64_t full = dim() - 1;
    mask &= full;
    if (mask == 0) throw std::domain_error("empty marginal mask");
    if (mask == full) return *this;
    const int k = std::popcount(mask);
    const size_t dk = size_t{1} << k;
    const double weight = 1.0 / static_cast<double>(size_t{1} << (m_ - k));
    std::vector<double> t(dk * dk, 0.0);
    const size_t d = dim();
    for (size_t in = 0; in < d; ++in) {
        const uint64_t ci = compact_bits(in, mask);
        for (size_t out = 0; out < d; ++out) {
            t[ci * dk + compact_bits(out, mask)] += weight * t_[in * d + out];
        }
    }
    return ConfusionMatrix(k, std::move(t),
                           kind_ == ConfusionKind::kSyntheticCorrelated && k > 1
                               ? ConfusionKind::kSyntheticCorrelated
                               : (kind_ == ConfusionKind::kIdentity ? ConfusionKind::kIdentity
                                                                     : ConfusionKind::kTensorProduct));
}

std::vector<ConfusionMatrix> ConfusionMatrix::single_qubit_marginals() const {
    std::vector<ConfusionMatrix> out;
    for (int q = 1; q <= m_; ++q) out.push_back(marginal(qubit_bit(q)));
    return out;
}

double ConfusionMatrix::mean_assignment_error() const {
    double s = 0.0;
    for (const auto& t : single_qubit_marginals()) s += 0.5 * (t(1, 0) + t(0, 1));
    return s / m_;
}

double NoiseSpec::gamma() const {
    if (t1_us <= 0.0) return 0.0;
    return 1.0 - std::exp(-t_gate_ns / (t1_us * 1000.0));
}

void NoiseSpec::validate() const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(e1) || !in_unit(e2)) throw std::domain_error("depolarizing rate outside [0, 1]");
    if (t_gate_ns < 0 || t1_us < 0) throw std::domain_error("negative gate time or T1");
    if (!in_unit(gamma())) throw std::domain_error("damping parameter outside [0, 1]");
}

ConfusionMatrix NoiseSpec::readout_for(uint64_t mask, int n) const {
    const int k = std::popcount(mask);
    if (confusion.empty()) return ConfusionMatrix::identity(k);
    if (confusion.qubits() != n) {
        throw std::domain_error("confusion matrix covers " + std::to_string(confusion.qubits()) +
                                " qubits, register has " + std::to_string(n));
    }
    return confusion.marginal(mask);
}

NoiseSpec NoiseSpec::typical(ConfusionMatrix confusion) {
    NoiseSpec s;
    s.e1 = 0.0016;
    s.e2 = 0.006;
    s.t_gate_ns = 24.0;
    s.t1_us = 26.5;
    s.confusion = std::move(confusion);
    return s;
}

namespace detail {

bool depolarize_inplace(std::vector<Complex>& amps, const GateSite& site, double e, Rng& rng) {
    if (e <= 0.0 || uniform01(rng) >= e) return false;
    const bool two = site.q2 != 0;
    std::uniform_int_distribution<int> pick(1, two ? 15 : 3);
    const int code = pick(rng);
    uint64_t x = 0, z = 0;
    auto put = [&](int letter, int q) {
        const uint64_t bit = qubit_bit(q);
        if (letter == 1 || letter == 2) x |= bit;
        if (letter == 2 || letter == 3) z |= bit;
    };
    put(code & 3, site.q1);
    if (two) put(code >> 2, site.q2);
    apply_pauli_inplace(amps, x, z);
    return true;
}

bool amplitude_damp_inplace(std::vector<Complex>& amps, int q, double gamma, Rng& rng) {
    if (gamma <= 0.0) return false;
    const uint64_t bit = qubit_bit(q);
    double excited = 0.0;
    for (size_t l = 0; l < amps.size(); ++l) {
        if (l & bit) excited += std::norm(amps[l]);
    }
    const double p_decay = gamma * excited;
    if (p_decay > 0.0 && uniform01(rng) < p_decay) {
        for (size_t l = 0; l < amps.size(); ++l) {
            if (l & bit) continue;
            amps[l] = amps[l | bit];
            amps[l | bit] = 0.0;
        }
        renormalize(amps);
        return true;
    }
    if (excited > 0.0) {
        const double keep = std::sqrt(1.0 - gamma);
        for (size_t l = 0; l < amps.size(); ++l) {
            if (l & bit) amps[l] *= keep;
        }
        renormalize(amps);
    }
    return false;
}

size_t draw_index(std::span<const double> dist, Rng& rng) {
    double total = 0.0;
    for (double v : dist) total += std::max(v, 0.0);
    double u = uniform01(rng) * total;
    size_t last = 0;
    for (size_t k = 0; k < dist.size(); ++k) {
        const double v = std::max(dist[k], 0.0);
        if (v <= 0.0) continue;
        last = k;
        if (u < v) return k;
        u -= v;
    }
    return last;
}

std::vector<uint64_t> multinomial(std::span<const double> dist, uint64_t shots, Rng& rng) {
    std::vector<uint64_t> counts(dist.size(), 0);
    double remaining_mass = 0.0;
    for (double v : dist) remaining_mass += std::max(v, 0.0);
    uint64_t remaining = shots;
    for (size_t k = 0; k < dist.size() && remaining > 0; ++k) {
        const double v = std::max(dist[k], 0.0);
        if (v <= 0.0) continue;
        const double prob = std::min(1.0, v / remaining_mass);
        const uint64_t c =
            prob >= 1.0 ? remaining : std::binomial_distribution<uint64_t>(remaining, prob)(rng);
        counts[k] = c;
        remaining -= c;
        remaining_mass -= v;
    }
    if (remaining > 0) counts[draw_index(dist, rng)] += remaining;
    return counts;
}

}  // namespace detail

StateVector apply_depolarizing_trajectory(const StateVector& state, const NoiseSpec& noise,
                                          std::span<const GateSite> gate_sites,
                                          const Seed& seed) {
    Rng rng = make_rng(seed);
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (const auto& site : gate_sites) {
        if (site.q1 < 1 || site.q1 > state.num_qubits() || site.q2 < 0 ||
            site.q2 > state.num_qubits()) {
            throw std::domain_error("gate site outside the register");
        }
        detail::depolarize_inplace(amps, site, site.q2 ? noise.e2 : noise.e1, rng);
    }
    return StateVector(state.num_qubits(), std::move(amps));
}

StateVector apply_amplitude_damping_trajectory(const StateVector& state, double gamma, int q,
                                               const Seed& seed) {
    if (gamma < 0 || gamma > 1) throw std::domain_error("gamma outside [0, 1]");
    if (q < 1 || q > state.num_qubits()) throw std::domain_error("qubit index out of range");
    Rng rng = make_rng(seed);
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    detail::amplitude_damp_inplace(amps, q, gamma, rng);
    return StateVector(state.num_qubits(), std::move(amps));
}

std::vector<uint64_t> sample_measurement(std::span<const double> populations, uint64_t shots,
                                         const ConfusionMatrix& confusion, const Seed& seed) {
    if (shots < 1) throw std::domain_error("shots must be at least 1");
    Rng rng = make_rng(seed);
    if (confusion.empty()) return detail::multinomial(populations, shots, rng);
    if (confusion.dim() != populations.size()) {
        throw std::domain_error("confusion dimension does not match the measured register");
    }
    const auto observed = confusion.apply(populations);
    return detail::multinomial(observed, shots, rng);
}

}  // namespace compshadow
