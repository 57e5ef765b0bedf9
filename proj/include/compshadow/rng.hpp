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

#include <cstdint>
#include <random>

namespace compshadow {

/// SplitMix64 finalizer. Used to derive independent engine seeds.
constexpr uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// A (seed, stream) pair. Identical pairs always produce identical engines,
/// so jobs can be dispatched in any order and still reproduce.
struct Seed {
    uint64_t seed = 0;
    uint64_t stream = 0;

    /// Child seed for sub-job `index`; the tree of derivations is stable.
    [[nodiscard]] constexpr Seed derive(uint64_t index) const {
        return Seed{seed, mix64(stream ^ mix64(index + 0x632be59bd9b4e019ULL))};
    }

    [[nodiscard]] constexpr uint64_t key() const { return mix64(seed ^ mix64(stream)); }
};

using Rng = std::mt19937_64;

inline Rng make_rng(const Seed& s) {
    std::seed_seq seq{static_cast<uint32_t>(s.key()), static_cast<uint32_t>(s.key() >> 32),
                      static_cast<uint32_t>(s.seed), static_cast<uint32_t>(s.stream)};
    return Rng(seq);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace compshadow
