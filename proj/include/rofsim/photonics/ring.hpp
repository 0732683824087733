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
#include <string>

#include "rofsim/core/waveform.hpp"

namespace rofsim {

/// Behavioral microring parameters. Frequencies are absolute optical Hz.
struct RingParams {
    double resonance_freq = 193.4e12;   // at zero tuning
    double fsr = 1e12;
    double self_coupling_t1 = 0.99;
    double self_coupling_t2 = 1.0;      // 1 for an all-pass ring
    double roundtrip_amplitude_a = 0.99;
    double tuning_offset = 0.0;         // thermal shift of the resonance
    double mod_efficiency = 0.0;        // resonance shift per volt of drive
    double bias_volt = 0.0;

    void validate() const {
        auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
        if (!in_unit(self_coupling_t1) || !in_unit(self_coupling_t2) || !in_unit(roundtrip_amplitude_a))
            throw InvalidArgument("RingParams: t1, t2 and a must lie in (0, 1]");
        if (!(fsr > 0.0)) throw InvalidArgument("RingParams: fsr must be positive");
    }

    double loop_gain() const { return self_coupling_t1 * self_coupling_t2 * roundtrip_amplitude_a; }
    bool is_all_pass() const { return self_coupling_t2 == 1.0; }
};

struct RingResponse {
    cplx through;
    cplx drop;
};

/// Resonance including thermal tuning and the static electrical bias.
inline double biased_resonance(const RingParams& p) {
    return p.resonance_freq + p.tuning_offset + p.mod_efficiency * p.bias_volt;
}

/// Add-drop response with the resonance moved by an extra `shift` (Hz).
inline RingResponse ring_response_shifted(const RingParams& p, double freq, double shift) {
    const double phi =
        2.0 * constants::pi * (freq - p.resonance_freq - p.tuning_offset - shift) / p.fsr;
    const double t1 = p.self_coupling_t1, t2 = p.self_coupling_t2, a = p.roundtrip_amplitude_a;
    const cplx e = std::polar(1.0, phi);
    const cplx den = 1.0 - t1 * t2 * a * e;
    RingResponse r;
    r.through = (t1 - t2 * a * e) / den;
    r.drop = -std::sqrt((1.0 - t1 * t1) * (1.0 - t2 * t2) * a) * std::polar(1.0, phi / 2.0) / den;
    return r;
}

/// Static (unbiased) add-drop transfer at absolute frequency freq.
inline RingResponse ring_response(const RingParams& p, double freq) {
    return ring_response_shifted(p, freq, 0.0);
}

/// Moves the resonance to target_freq with the smallest thermal shift (modulo FSR).
inline RingParams thermal_tune(RingParams p, double target_freq) {
    p.tuning_offset = std::remainder(target_freq - p.resonance_freq, p.fsr);
    if (p.tuning_offset == -0.0) p.tuning_offset = 0.0;
    return p;
}

/// Full width at half maximum of the resonance dip/peak.
inline double ring_fwhm(const RingParams& p) {
    const double r = p.loop_gain();
    return p.fsr * (1.0 - r) / (constants::pi * std::sqrt(r));
}

/// Distance (Hz) of the response poles from the real frequency axis.
inline double ring_pole_distance(const RingParams& p) {
    return p.fsr * std::log(1.0 / p.loop_gain()) / (2.0 * constants::pi);
}

namespace detail {
// Loop gain r giving the requested FWHM: (1 - r) / sqrt(r) = pi * fwhm / fsr.
inline double loop_gain_for_fwhm(double fwhm, double fsr) {
    const double c = constants::pi * fwhm / fsr;
    const double u = (-c + std::sqrt(c * c + 4.0)) / 2.0;
    return u * u;
}
}  // namespace detail

/// Critically coupled all-pass ring (t1 = a) with the given linewidth.
inline RingParams make_critical_ring(double resonance, double fwhm, double fsr,
                                     double mod_efficiency = 0.0) {
    if (!(fwhm > 0.0) || !(fsr > fwhm))
        throw InvalidArgument("make_critical_ring: need 0 < fwhm < fsr");
    const double t = std::sqrt(detail::loop_gain_for_fwhm(fwhm, fsr));
    RingParams p;
    p.resonance_freq = resonance;
    p.fsr = fsr;
    p.self_coupling_t1 = t;
    p.self_coupling_t2 = 1.0;
    p.roundtrip_amplitude_a = t;
    p.mod_efficiency = mod_efficiency;
    return p;
}

/// Symmetric add-drop ring (t1 = t2) with round-trip amplitude a and the given linewidth.
inline RingParams make_add_drop_ring(double resonance, double fwhm, double fsr, double a = 1.0) {
    if (!(fwhm > 0.0) || !(fsr > fwhm))
        throw InvalidArgument("make_add_drop_ring: need 0 < fwhm < fsr");
    const double r = detail::loop_gain_for_fwhm(fwhm, fsr);
    if (r / a >= 1.0) throw InvalidArgument("make_add_drop_ring: loss too high for this linewidth");
    RingParams p;
    p.resonance_freq = resonance;
    p.fsr = fsr;
    p.self_coupling_t1 = std::sqrt(r / a);
    p.self_coupling_t2 = p.self_coupling_t1;
    p.roundtrip_amplitude_a = a;
    return p;
}

}  // namespace rofsim
