/*
 * Copyright (c) 2026, rofsim authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "rofsim/core/waveform.hpp"

namespace rofsim {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; mixes a base seed with stream/index tags into an independent seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index = 0) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(base) ^ stream) ^ (index * 0x632be59bd9b4e019ULL));
}

inline std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint8_t> bits(n);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 64 == 0) word = rng();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return bits;
}

/// Adds circular complex Gaussian noise with E|n|^2 = variance to every sample.
inline void add_complex_noise(std::span<cplx> s, double variance, Rng& rng) {
    if (variance <= 0.0) return;
    std::normal_distribution<double> g(0.0, std::sqrt(variance / 2.0));
    for (auto& v : s) v += cplx(g(rng), g(rng));
}

/// Adds real Gaussian noise of the given variance to the real parts.
inline void add_real_noise(std::span<cplx> s, double variance, Rng& rng) {
    if (variance <= 0.0) return;
    std::normal_distribution<double> g(0.0, std::sqrt(variance));
    for (auto& v : s) v += cplx(g(rng), 0.0);
}

}  // namespace rofsim
