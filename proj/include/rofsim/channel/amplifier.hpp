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

struct AmplifierParams {
    double gain_db = 20.0;
    double nf_db = 5.0;
    std::uint64_t seed = 0;
};

/// Complex ASE PSD (W/Hz) added by an amplifier: (G - 1) h nu NF, split over the quadratures.
inline double ase_psd(double gain_db, double nf_db, double optical_freq) {
    const double g = db_to_linear(gain_db);
    return (g - 1.0) * constants::planck * optical_freq * db_to_linear(nf_db);
}

/**
 * Amplifies the field by gain_db and adds white circular ASE with PSD (G-1) h nu NF / 2
 * per quadrature over the simulated bandwidth.
 */
inline ComplexWaveform amplify_ase(const ComplexWaveform& field, double gain_db, double nf_db,
                                   std::uint64_t seed) {
    require_valid(field, "amplify_ase");
    if (gain_db < 0.0) throw InvalidArgument("amplify_ase: gain must be >= 0 dB");
    ComplexWaveform out = scaled(field, db_to_amplitude(gain_db));
    const double variance = ase_psd(gain_db, nf_db, field.ref_freq) * field.sample_rate;
    Rng rng(seed);
    add_complex_noise(out.samples, variance, rng);
    return out;
}

inline ComplexWaveform amplify_ase(const ComplexWaveform& field, const AmplifierParams& p) {
    return amplify_ase(field, p.gain_db, p.nf_db, p.seed);
}

/// OSNR in 0.1 nm (12.5 GHz) expected after an amplifier: 58 + P_in(dBm) - NF near 1550 nm.
inline double analytic_osnr_db(double input_power_dbm, double gain_db, double nf_db, double optical_freq) {
    const double pin = dbm_to_watt(input_power_dbm);
    const double g = db_to_linear(gain_db);
    return linear_to_db(g * pin / (ase_psd(gain_db, nf_db, optical_freq) * 12.5e9));
}

}  // namespace rofsim
