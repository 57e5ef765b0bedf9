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

#include "compshadow/probing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "compshadow/compression.hpp"
#include "compshadow/parallel.hpp"
#include "compshadow/walsh.hpp"
#include "compshadow/xy_model.hpp"

namespace compshadow {

namespace {

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
    return Matrix2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                   a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Matrix2 strip_phase(const Matrix2& m) {
    for (const Complex& z : m) {
        if (std::abs(z) > 1e-9) {
            const Complex phase = z / std::abs(z);
            Matrix2 out;
            for (int k = 0; k < 4; ++k) out[k] = m[k] / phase;
            return out;
        }
    }
    throw std::logic_error("zero matrix in Clifford generation");
}

bool same(const Matrix2& a, const Matrix2& b) {
    for (int k = 0; k < 4; ++k) {
        if (std::abs(a[k] - b[k]) > 1e-9) return false;
    }
    return true;
}

// Places the bits of `x` at the set positions of `mask`, lowest first.
uint64_t deposit(uint64_t x, uint64_t mask) {
    uint64_t out = 0;
    for (int k = 0; mask; mask &= mask - 1, ++k) {
        if ((x >> k) & 1) out |= mask & (~mask + 1);
    }
    return out;
}

// d entry of a k-qubit subsystem; depends only on the Hamming weight of j.
double d_weight(uint64_t j, int k) { return std::pow(3.0, std::popcount(j)) * std::ldexp(1.0, 2 - k); }

uint64_t binomial(uint64_t shots, double p, Rng& rng) {
    return std::binomial_distribution<uint64_t>(shots, std::clamp(p, 0.0, 1.0))(rng);
}

// Shadow access for one randomized-measurement round.
class RoundOracle {
   public:
    RoundOracle(const StateVector& state, std::vector<Matrix2> layer, const NoiseSpec& noise,
                Backend backend)
        : state_(state), noise_(noise), backend_(backend) {
        for (int q = 1; q <= state.num_qubits(); ++q) prerotations_.emplace_back(q, layer[q - 1]);
        ideal_ = noise.gate_noise_free() && noise.confusion.empty();
        if (ideal_) {
            std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
            for (const auto& [q, u] : prerotations_) detail::apply_single_qubit_inplace(amps, q, u);
            shadows_ = forward_values(amps);
        }
    }

    double exact(uint64_t j) const {
        if (ideal_) return shadows_[j];
        return outcome_distribution(state_, program(j), noise_)[0];
    }

    uint64_t zeros(uint64_t j, uint64_t shots, const Seed& seed) const {
        if (ideal_) {
            Rng rng = make_rng(seed);
            return binomial(shots, shadows_[j], rng);
        }
        return sample_program(state_, program(j), noise_, nullptr, shots, backend_, seed)[0];
    }

   private:
    static std::vector<double> forward_values(const std::vector<Complex>& amps) {
        std::vector<double> a(amps.size());
        for (size_t l = 0; l < amps.size(); ++l) a[l] = std::norm(amps[l]);
        double total = 0.0;
        for (double x : a) total += x;
        fwht_inplace(a);
        for (double& x : a) x = 0.5 * (x / total + 1.0);
        a[0] = 1.0;
        return a;
    }

    ReadoutProgram program(uint64_t j) const {
        return ReadoutProgram{build_compression_circuit(j, state_.num_qubits()), 1, prerotations_};
    }

    const StateVector& state_;
    const NoiseSpec& noise_;
    Backend backend_;
    std::vector<std::pair<int, Matrix2>> prerotations_;
    bool ideal_ = false;
    std::vector<double> shadows_;
};

std::vector<Matrix2> random_layer(int n, const Seed& seed) {
    Rng rng = make_rng(seed);
    const auto& group = clifford24();
    std::uniform_int_distribution<size_t> pick(0, group.size() - 1);
    std::vector<Matrix2> layer(n);
    for (auto& u : layer) u = group[pick(rng)];
    return layer;
}

double quadratic_query(const RoundOracle& oracle, uint64_t j, uint64_t shots, const Seed& seed) {
    if (shots == 0) {
        const double a = oracle.exact(j);
        return a * a - a;
    }
    const uint64_t z = oracle.zeros(j, shots, seed);
    return -unbiased_quadratic(z, shots - z);
}

// Round values per subsystem: out[s][round].
std::vector<std::vector<double>> estimate_rounds(const StateVector& state,
                                                 const std::vector<uint64_t>& subsystems,
                                                 const RenyiOptions& options,
                                                 const NoiseSpec& noise, const Seed& seed) {
    const int n = state.num_qubits();
    if (options.rounds < 1) throw std::domain_error("rounds must be positive");
    if (options.shots == 1) throw std::domain_error("the quadratic estimator needs >= 2 shots");
    uint64_t all = 0;
    for (uint64_t s : subsystems) {
        if (s == 0 || (s >> n) != 0) throw std::domain_error("subsystem mask out of range");
        all |= s;
    }
    std::vector<std::vector<double>> out(subsystems.size(),
                                         std::vector<double>(options.rounds));
    for (int round = 0; round < options.rounds; ++round) {
        const Seed round_seed = seed.derive(static_cast<uint64_t>(round));
        const RoundOracle oracle(state, random_layer(n, round_seed.derive(0)), noise,
                                 options.backend);
        if (options.path == RenyiPath::kDenseSum) {
            std::vector<double> g(size_t{1} << n, 0.0);
            for (uint64_t j = all; j; j = (j - 1) & all) {
                g[j] = quadratic_query(oracle, j, options.shots, round_seed.derive(j + 1));
            }
            for (size_t s = 0; s < subsystems.size(); ++s) {
                const uint64_t mask = subsystems[s];
                const int k = std::popcount(mask);
                double value = std::ldexp(1.0, k);
                for (uint64_t j = mask; j; j = (j - 1) & mask) value += d_weight(j, k) * g[j];
                out[s][round] = value;
            }
        } else {
            for (size_t s = 0; s < subsystems.size(); ++s) {
                const uint64_t mask = subsystems[s];
                const int k = std::popcount(mask);
                uint64_t counter = 0;
                const Seed query_seed = round_seed.derive(1000 + s);
                auto sample = [&](Rng& rng) { return deposit(sample_d(k, rng), mask); };
                auto query_a = [&](uint64_t j) { return d_weight(j, k); };
                auto query_b = [&](uint64_t j, Rng&) {
                    return quadratic_query(oracle, j, options.shots, query_seed.derive(counter++));
                };
                Rng rng = make_rng(round_seed.derive(2000 + s));
                const IpeResult r = ipe(sample, query_a, query_b, d_norm_sq(k), options.ipe, rng);
                out[s][round] = std::ldexp(1.0, k) + r.estimate;
            }
        }
    }
    return out;
}

RenyiEstimate finish(std::vector<double> values, int k) {
    RenyiEstimate e;
    double sum = 0.0;
    for (double v : values) sum += v;
    const double m = static_cast<double>(values.size());
    e.mean = sum / m;
    double var = 0.0;
    for (double v : values) var += (v - e.mean) * (v - e.mean);
    var = values.size() > 1 ? var / (m - 1.0) : 0.0;
    e.round_values = std::move(values);
    if (!(e.mean > 0.0)) {
        std::ostringstream msg;
        msg << "purity estimate " << e.mean << " is not positive (" << e.round_values.size()
            << " rounds, round std " << std::sqrt(var) << ")";
        throw EstimationFailure(msg.str());
    }
    const double lo = std::ldexp(1.0, -k), hi = std::ldexp(1.0, k);
    const double arg = std::clamp(e.mean, lo, hi);
    e.clamped = arg != e.mean;
    e.s2 = -std::log2(arg);
    e.std_error = std::sqrt(var / m) / (arg * std::log(2.0));
    return e;
}

double exact_average(const StateVector& state, uint64_t subsystem,
                     const std::vector<Matrix2>& choices) {
    const int n = state.num_qubits();
    const int k = std::popcount(subsystem);
    if (subsystem == 0 || (subsystem >> n) != 0) throw std::domain_error("subsystem mask out of range");
    std::vector<int> qubits;
    for (int q = 1; q <= n; ++q) {
        if (subsystem & qubit_bit(q)) qubits.push_back(q);
    }
    const size_t c = choices.size();
    uint64_t total = 1;
    for (int i = 0; i < k; ++i) total *= c;
    double sum = 0.0;
    std::vector<double> a_sub(size_t{1} << k);
    for (uint64_t code = 0; code < total; ++code) {
        std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
        uint64_t rest = code;
        for (int q : qubits) {
            detail::apply_single_qubit_inplace(amps, q, choices[rest % c]);
            rest /= c;
        }
        std::vector<double> p(amps.size());
        for (size_t l = 0; l < amps.size(); ++l) p[l] = std::norm(amps[l]);
        fwht_inplace(p);
        for (uint64_t x = 0; x < a_sub.size(); ++x) {
            a_sub[x] = 0.5 * (p[deposit(x, subsystem)] + 1.0);
        }
        a_sub[0] = 1.0;
        sum += purity_round_value(a_sub, k);
    }
    return -std::log2(sum / static_cast<double>(total));
}

}  // namespace

const std::vector<Matrix2>& clifford24() {
    static const std::vector<Matrix2> group = [] {
        const double h = 1.0 / std::sqrt(2.0);
        const Matrix2 gens[2] = {Matrix2{h, h, h, -h}, Matrix2{1.0, 0.0, 0.0, Complex(0.0, 1.0)}};
        std::vector<Matrix2> found{Matrix2{1.0, 0.0, 0.0, 1.0}};
        for (size_t head = 0; head < found.size(); ++head) {
            for (const Matrix2& g : gens) {
                const Matrix2 next = strip_phase(multiply(g, found[head]));
                bool seen = false;
                for (const Matrix2& m : found) seen = seen || same(m, next);
                if (!seen) found.push_back(next);
            }
        }
        if (found.size() != 24) throw std::logic_error("Clifford generation did not close at 24");
        return found;
    }();
    return group;
}

double d_entry(uint64_t j, int n) {
    if (j == 0) throw std::domain_error("d_0 is not defined");
    return std::pow(3.0, std::popcount(j)) * std::ldexp(1.0, 2 - n);
}

double d_norm_sq(int n) { return std::ldexp(std::pow(10.0, n) - 1.0, 4 - 2 * n); }

uint64_t sample_d(int n, Rng& rng) {
    check_qubit_count(n);
    std::bernoulli_distribution bit(0.9);
    for (;;) {
        uint64_t j = 0;
        for (int q = 0; q < n; ++q) {
            if (bit(rng)) j |= uint64_t{1} << q;
        }
        if (j != 0) return j;
    }
}

uint64_t sample_d(int n, const Seed& seed) {
    Rng rng = make_rng(seed);
    return sample_d(n, rng);
}

double unbiased_quadratic(uint64_t zeros, uint64_t ones) {
    const uint64_t total = zeros + ones;
    if (total < 2) throw std::domain_error("the quadratic estimator needs at least 2 outcomes");
    return static_cast<double>(zeros) * static_cast<double>(ones) /
           (static_cast<double>(total) * static_cast<double>(total - 1));
}

double unbiased_quadratic(std::span<const int> outcomes) {
    uint64_t zeros = 0, ones = 0;
    for (int x : outcomes) {
        if (x == 0) ++zeros;
        else if (x == 1) ++ones;
        else throw std::domain_error("outcomes must be 0 or 1");
    }
    return unbiased_quadratic(zeros, ones);
}

double purity_round_value(std::span<const double> a, int k) {
    if (a.size() != (size_t{1} << k)) throw std::domain_error("shadow vector length must be 2^k");
    double value = std::ldexp(1.0, k);
    for (uint64_t j = 1; j < a.size(); ++j) value += d_entry(j, k) * (a[j] * a[j] - a[j]);
    return value;
}

RenyiEstimate renyi2_compshadow(const StateVector& state, uint64_t subsystem,
                                const RenyiOptions& options, const NoiseSpec& noise,
                                const Seed& seed) {
    auto values = estimate_rounds(state, {subsystem}, options, noise, seed);
    return finish(std::move(values[0]), std::popcount(subsystem));
}

double renyi2_exact_average(const StateVector& state, uint64_t subsystem) {
    return exact_average(state, subsystem,
                         {basis_change('Z'), basis_change('X'), basis_change('Y')});
}

double renyi2_clifford_average(const StateVector& state, uint64_t subsystem) {
    if (std::popcount(subsystem) > 3) throw std::domain_error("Clifford average limited to 3 qubits");
    return exact_average(state, subsystem, clifford24());
}

double subsystem_purity(const StateVector& state, uint64_t subsystem) {
    const int n = state.num_qubits();
    const uint64_t full = (uint64_t{1} << n) - 1;
    if (subsystem == 0 || (subsystem & ~full)) throw std::domain_error("subsystem mask out of range");
    const uint64_t rest = full & ~subsystem;
    const size_t dk = size_t{1} << std::popcount(subsystem);
    std::vector<Complex> rho(dk * dk);
    for (size_t x = 0; x < dk; ++x) {
        const uint64_t a = deposit(x, subsystem);
        for (size_t y = 0; y < dk; ++y) {
            const uint64_t a2 = deposit(y, subsystem);
            Complex s = 0.0;
            for (uint64_t b = rest;; b = (b - 1) & rest) {
                s += state[a | b] * std::conj(state[a2 | b]);
                if (b == 0) break;
            }
            rho[x * dk + y] = s;
        }
    }
    double purity = 0.0;
    for (const Complex& z : rho) purity += std::norm(z);
    return purity;
}

double renyi2_exact(const StateVector& state, uint64_t subsystem) {
    return -std::log2(subsystem_purity(state, subsystem));
}

RmiEstimate rmi(const StateVector& state, uint64_t a, uint64_t b, const RenyiOptions& options,
                const NoiseSpec& noise, const Seed& seed) {
    if (a & b) throw std::domain_error("RMI partitions overlap");
    auto values = estimate_rounds(state, {a, b, a | b}, options, noise, seed);
    RmiEstimate r;
    r.a = finish(std::move(values[0]), std::popcount(a));
    r.b = finish(std::move(values[1]), std::popcount(b));
    r.ab = finish(std::move(values[2]), std::popcount(a | b));
    r.i2 = r.a.s2 + r.b.s2 - r.ab.s2;
    return r;
}

double rmi_exact(const StateVector& state, uint64_t a, uint64_t b) {
    if (a & b) throw std::domain_error("RMI partitions overlap");
    return renyi2_exact(state, a) + renyi2_exact(state, b) - renyi2_exact(state, a | b);
}

std::vector<Fig3Row> fig3_experiment(const Fig3Config& config) {
    std::vector<double> times = config.times;
    if (times.empty()) {
        for (int k = 0; k <= 20; ++k) times.push_back(0.25 * k);
    }
    if (config.repetitions < 1) throw std::domain_error("repetitions must be positive");
    const int n = config.n;
    const XyModel fixed(n, uniform_fields(n, config.field));
    const XyModel disorder(
        n, disordered_fields(n, config.disorder_lo, config.disorder_hi, config.seed.derive(0)));
    const StateVector initial = neel_state(n);
    const NoiseSpec ideal = NoiseSpec::ideal();

    struct Series {
        std::string name;
        const XyModel* model;
        uint64_t a, b;  // b == 0: entropy of a
    };
    std::vector<Series> series{{"fixed", &fixed, config.subsystem, 0},
                               {"disorder", &disorder, config.subsystem, 0}};
    if (config.include_rmi) {
        series.push_back({"rmi-adjacent", &disorder, config.pair_adjacent_a, config.pair_adjacent_b});
        series.push_back({"rmi-distant", &disorder, config.pair_distant_a, config.pair_distant_b});
    }

    std::vector<Fig3Row> rows;
    for (size_t s = 0; s < series.size(); ++s) {
        const Series& cur = series[s];
        for (size_t ti = 0; ti < times.size(); ++ti) {
            const StateVector state = cur.model->evolve(initial, times[ti]);
            const double theory = cur.b == 0 ? renyi2_exact(state, cur.a)
                                             : rmi_exact(state, cur.a, cur.b);
            const size_t reps = static_cast<size_t>(config.repetitions);
            std::vector<double> estimates(reps, 0.0);
            std::vector<char> ok(reps, 0);
            parallel_for(reps, config.jobs, [&](size_t rep) {
                const Seed seed = config.seed.derive(1 + s).derive(ti).derive(rep);
                try {
                    estimates[rep] =
                        cur.b == 0
                            ? renyi2_compshadow(state, cur.a, config.options, ideal, seed).s2
                            : rmi(state, cur.a, cur.b, config.options, ideal, seed).i2;
                    ok[rep] = 1;
                } catch (const EstimationFailure&) {
                }
            });
            double sum = 0.0, sum_sq = 0.0;
            int good = 0;
            for (size_t rep = 0; rep < reps; ++rep) {
                if (!ok[rep]) continue;
                sum += estimates[rep];
                sum_sq += estimates[rep] * estimates[rep];
                ++good;
            }
            const double mean = good > 0 ? sum / good : std::nan("");
            const double var = good > 1 ? (sum_sq - sum * mean) / (good - 1) : 0.0;
            rows.push_back(Fig3Row{times[ti], cur.name, mean, theory,
                                   good > 0 ? std::sqrt(std::max(var, 0.0) / good) : std::nan(""),
                                   config.seed.seed, config.repetitions - good});
        }
    }
    return rows;
}

std::string fig3_csv(const std::vector<Fig3Row>& rows) {
    std::ostringstream out;
    out.precision(10);
    out << "t,B_mode,estimate,theory,stderr,seed\n";
    for (const auto& r : rows) {
        out << r.t << ',' << r.series << ',' << r.estimate << ',' << r.theory << ',' << r.std_error
            << ',' << r.seed << '\n';
    }
    return out.str();
}

}  // namespace compshadow
