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
#include <cstdint>

#include "rofsim/core/random.hpp"
#include "rofsim/core/waveform.hpp"

namespace rofsim {

struct PdParams {
    double responsivity = 1.0;          // A/W
    double thermal_noise_psd = 1e-22;   // one-sided, A^2/Hz
    bool include_shot = true;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(responsivity > 0.0)) throw InvalidArgument("PdParams: responsivity must be positive");
        if (thermal_noise_psd < 0.0) throw InvalidArgument("PdParams: thermal noise PSD must be >= 0");
    }
};

/// Noise bandwidth of a real signal sampled at fs.
inline double noise_bandwidth(double sample_rate) { return sample_rate / 2.0; }

/// Square-law detection without noise: i = R |E|^2 (real electrical waveform).
inline ComplexWaveform photodetect_noiseless(const ComplexWaveform& field, double responsivity) {
    require_valid(field, "photodetect");
    ComplexWaveform out = field.like(field.size());
    out.ref_freq = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i)
        out.samples[i] = {responsivity * std::norm(field.samples[i]), 0.0};
    return out;
}

/**
 * Photocurrent i = R|E|^2 + shot + thermal. Shot noise is Gaussian with variance
 * 2 q R |E|^2 B and thermal noise has variance N_th B, where B = fs / 2.
 */
inline ComplexWaveform photodetect(const ComplexWaveform& field, const PdParams& p) {
    p.validate();
    ComplexWaveform out = photodetect_noiseless(field, p.responsivity);
    const double bw = noise_bandwidth(field.sample_rate);
    Rng rng(p.seed);
    std::normal_distribution<double> g(0.0, 1.0);
    const double thermal_var = p.thermal_noise_psd * bw;
    for (auto& v : out.samples) {
        double var = thermal_var;
        if (p.include_shot) var += 2.0 * constants::electron_charge * v.real() * bw;
        v += cplx(std::sqrt(var) * g(rng), 0.0);
    }
    return out;
}

/**
 * One-sided PSD (A^2/Hz) of the receiver noise for a mean photocurrent, used when the
 * noise is added after band extraction instead of at the full optical sample rate.
 */
inline double receiver_noise_psd(const PdParams& p, double mean_current) {
    double n = p.thermal_noise_psd;
    if (p.include_shot) n += 2.0 * constants::electron_charge * std::max(mean_current, 0.0);
    return n;
}

}  // namespace rofsim
