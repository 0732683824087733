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
#include <string>

#include "rofsim/core/spectrum.hpp"

namespace rofsim {

/**
 * Real passband version of a complex-baseband signal: sqrt(2) Re{x e^{j 2 pi f_rf t}},
 * which keeps the mean power. The occupied bandwidth is measured from the spectrum
 * unless given.
 */
inline ComplexWaveform upconvert_real(const ComplexWaveform& w, double f_rf,
                                      std::optional<double> bandwidth = std::nullopt) {
    require_valid(w, "upconvert_real");
    ComplexWaveform out = w.like(w.size());
    out.ref_freq = 0.0;
    if (f_rf == 0.0) {
        for (std::size_t n = 0; n < w.size(); ++n) out.samples[n] = {w.samples[n].real(), 0.0};
        return out;
    }
    const double bw = bandwidth.value_or(occupied_bandwidth(w));
    if (f_rf < 0.0 || f_rf + bw / 2.0 >= w.sample_rate / 2.0)
        throw AliasingError("upconvert_real: carrier " + std::to_string(f_rf) + " Hz with bandwidth " +
                            std::to_string(bw) + " Hz exceeds Nyquist at " +
                            std::to_string(w.sample_rate) + " S/s");
    const double step = 2.0 * constants::pi * f_rf / w.sample_rate;
    const double root2 = std::sqrt(2.0);
    for (std::size_t n = 0; n < w.size(); ++n)
        out.samples[n] = {root2 * (w.samples[n] * std::polar(1.0, step * static_cast<double>(n))).real(), 0.0};
    return out;
}

/// Inverse of upconvert_real: complex baseband around f_rf at out_rate.
inline ComplexWaveform downconvert_real(const ComplexWaveform& w, double f_rf, double out_rate) {
    require_valid(w, "downconvert_real");
    if (std::abs(f_rf) + out_rate / 2.0 > w.sample_rate / 2.0 + 1e-9 * w.sample_rate)
        throw AliasingError("downconvert_real: band around " + std::to_string(f_rf) +
                            " Hz exceeds the input Nyquist band");
    auto out = extract_band(w, f_rf, out_rate);
    for (auto& v : out.samples) v *= std::sqrt(2.0);
    out.ref_freq = 0.0;
    return out;
}

}  // namespace rofsim
