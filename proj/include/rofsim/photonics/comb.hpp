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

#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "rofsim/core/random.hpp"
#include "rofsim/core/waveform.hpp"

namespace rofsim {

/// Equally spaced laser tones.
struct CombSpec {
    std::size_t n_tones = 1;
    double start_freq = 193.4e12;
    double spacing = 100e9;
    double power_per_tone = 1e-3;  // W
    double linewidth = 0.0;        // Hz, 0 = ideal tones
    std::uint64_t seed = 0;        // phase-noise seed when linewidth > 0

    void validate() const {
        if (n_tones == 0) throw InvalidArgument("CombSpec: n_tones must be >= 1");
        if (n_tones > 1 && !(spacing > 0.0)) throw InvalidArgument("CombSpec: spacing must be positive");
        if (!(power_per_tone >= 0.0)) throw InvalidArgument("CombSpec: power must be non-negative");
        if (linewidth < 0.0) throw InvalidArgument("CombSpec: linewidth must be non-negative");
    }

    double tone(std::size_t k) const { return start_freq + spacing * static_cast<double>(k); }
    double centre() const { return start_freq + spacing * static_cast<double>(n_tones - 1) / 2.0; }
};

/**
 * Sum of comb tones as a complex envelope around ref_freq (default: comb centre).
 * With linewidth > 0 each tone carries independent Wiener phase noise.
 */
inline ComplexWaveform comb_source(const CombSpec& spec, double duration, double sample_rate,
                                   std::optional<double> ref_freq = std::nullopt) {
    spec.validate();
    if (!(sample_rate > 0.0)) throw InvalidArgument("comb_source: sample_rate must be positive");
    const auto n = static_cast<std::size_t>(std::llround(duration * sample_rate));
    if (n == 0) throw SizingError("comb_source: duration shorter than one sample");
    const double ref = ref_freq.value_or(spec.centre());
    ComplexWaveform out(std::vector<cplx>(n), sample_rate, ref);
    Rng rng(spec.seed);
    const double sigma = std::sqrt(2.0 * constants::pi * spec.linewidth / sample_rate);
    std::normal_distribution<double> g(0.0, 1.0);
    const double amp = std::sqrt(spec.power_per_tone);
    for (std::size_t k = 0; k < spec.n_tones; ++k) {
        const double off = spec.tone(k) - ref;
        if (std::abs(off) >= sample_rate / 2.0)
            throw AliasingError("comb_source: tone " + std::to_string(k) + " at offset " +
                                std::to_string(off) + " Hz is outside the +-" +
                                std::to_string(sample_rate / 2.0) + " Hz band");
        const double step = 2.0 * constants::pi * off / sample_rate;
        double phase_noise = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            out.samples[i] += std::polar(amp, step * static_cast<double>(i) + phase_noise);
            if (sigma > 0.0) phase_noise += sigma * g(rng);
        }
    }
    return out;
}

}  // namespace rofsim
