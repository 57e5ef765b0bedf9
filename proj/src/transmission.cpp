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

#include "compshadow/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "compshadow/executor.hpp"
#include "compshadow/readout.hpp"
#include "compshadow/state.hpp"

namespace compshadow {

std::string to_string(Protocol p) { return p == Protocol::kDirect ? "direct" : "compshadow"; }

Protocol parse_protocol(const std::string& text) {
    if (text == "direct") return Protocol::kDirect;
    if (text == "compshadow") return Protocol::kCompShadow;
    throw std::domain_error("unknown protocol '" + text + "'");
}

double ghz_parity(int n) {
    check_qubit_count(n);
    return n % 2 == 0 ? 1.0 : 0.0;
}

namespace {

// Probability that one measured copy reports even parity.
double even_probability(Protocol protocol, int n) {
    const StateVector ghz = ghz_state(n);
    const uint64_t all = (uint64_t{1} << n) - 1;
    if (protocol == Protocol::kCompShadow) return exact_shadow(ghz, all, NoiseSpec::ideal());
    const ReadoutProgram direct{CnotCircuit(n), all, {}};
    const auto dist = outcome_distribution(ghz, direct, NoiseSpec::ideal());
    return 0.5 * (1.0 + parity_expectation(dist, all));
}

TransmissionResult simulate(Protocol protocol, int n, uint64_t copies, double loss,
                            double even_prob, const Seed& seed) {
    if (copies == 0) throw std::domain_error("at least one copy must be sent");
    if (!(loss >= 0.0 && loss <= 1.0)) throw std::domain_error("loss rate must lie in [0, 1]");
    const int travelling = protocol == Protocol::kDirect ? n : 1;
    const double survive = std::pow(1.0 - loss, travelling);
    Rng rng = make_rng(seed);
    TransmissionResult r{protocol, n, copies, loss};
    r.survivors = std::binomial_distribution<uint64_t>(copies, survive)(rng);
    const double ideal = ghz_parity(n);
    if (r.survivors == 0) {
        r.no_survivors = true;
        r.estimate = 0.0;
    } else {
        const uint64_t even = std::binomial_distribution<uint64_t>(r.survivors, even_prob)(rng);
        r.estimate = (2.0 * static_cast<double>(even) - static_cast<double>(r.survivors)) /
                     static_cast<double>(r.survivors);
    }
    r.error = std::abs(r.estimate - ideal);
    return r;
}

}  // namespace

TransmissionResult transmit_direct(int n, uint64_t copies, double loss, const Seed& seed) {
    return simulate(Protocol::kDirect, n, copies, loss, even_probability(Protocol::kDirect, n),
                    seed);
}

TransmissionResult transmit_compshadow(int n, uint64_t copies, double loss, const Seed& seed) {
    return simulate(Protocol::kCompShadow, n, copies, loss,
                    even_probability(Protocol::kCompShadow, n), seed);
}

TransmissionResult transmit(Protocol protocol, int n, uint64_t copies, double loss,
                            const Seed& seed) {
    return protocol == Protocol::kDirect ? transmit_direct(n, copies, loss, seed)
                                         : transmit_compshadow(n, copies, loss, seed);
}

RequiredCopies required_copies(Protocol protocol, int n, double loss, double target_error,
                               const Seed& seed, int trials, uint64_t cap) {
    if (!(target_error > 0.0 && target_error < 1.0)) {
        throw std::domain_error("target error must lie in (0, 1)");
    }
    if (trials < 1) throw std::domain_error("trials must be positive");
    const double even_prob = even_probability(protocol, n);
    auto median_error = [&](uint64_t copies) {
        std::vector<double> errors(trials);
        for (int k = 0; k < trials; ++k) {
            const TransmissionResult r =
                simulate(protocol, n, copies, loss, even_prob,
                         seed.derive(copies).derive(static_cast<uint64_t>(k)));
            errors[k] = r.no_survivors ? 1.0 : r.error;
        }
        std::sort(errors.begin(), errors.end());
        return errors[(errors.size() - 1) / 2];
    };

    uint64_t hi = 1;
    double hi_err = median_error(hi);
    uint64_t lo = 0;
    while (hi_err > target_error) {
        if (hi >= cap) return RequiredCopies{cap, hi_err, true};
        lo = hi;
        hi = std::min(cap, hi * 2);
        hi_err = median_error(hi);
    }
    // Invariant: median_error(hi) <= target and lo failed (or is 0).
    while (hi - lo > 1 && static_cast<double>(hi) > 1.01 * static_cast<double>(lo)) {
        const uint64_t mid = std::max<uint64_t>(
            lo + 1, static_cast<uint64_t>(std::sqrt(static_cast<double>(std::max<uint64_t>(lo, 1)) *
                                                    static_cast<double>(hi))));
        if (mid >= hi) break;
        const double err = median_error(mid);
        if (err <= target_error) {
            hi = mid;
            hi_err = err;
        } else {
            lo = mid;
        }
    }
    return RequiredCopies{hi, hi_err, false};
}

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::domain_error("fit needs >= 2 points");
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::domain_error("fit needs distinct x values");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ss_res += r * r;
    }
    f.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    return f;
}

LinearFit fit_exponential(std::span<const double> x, std::span<const double> y) {
    std::vector<double> logs(y.size());
    for (size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) throw std::domain_error("exponential fit needs positive values");
        logs[i] = std::log(y[i]);
    }
    return fit_linear(x, logs);
}

std::string transmission_csv_header() {
    return "protocol,n,n_c,r,seed,survivors,estimate,error,flag";
}

std::string to_csv_row(const TransmissionResult& r, uint64_t seed) {
    std::ostringstream out;
    out.precision(10);
    out << to_string(r.protocol) << ',' << r.n << ',' << r.sent << ',' << r.loss << ',' << seed
        << ',' << r.survivors << ',' << r.estimate << ',' << r.error << ','
        << (r.no_survivors ? "no-survivors" : "");
    return out.str();
}

}  // namespace compshadow
