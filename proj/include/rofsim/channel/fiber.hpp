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

#include "rofsim/core/fft.hpp"

namespace rofsim {

/// One-way group delay of standard fiber, from 200 us round trip over 20 km.
inline constexpr double kGroupDelayUsPerKm = 5.0;

struct FiberParams {
    double length_km = 0.0;
    double atten_db_per_km = 0.2;
    double dispersion_ps_nm_km = 17.0;
    double group_delay_us_per_km = kGroupDelayUsPerKm;
    double ref_wavelength_nm = 1550.0;

    void validate() const {
        if (length_km < 0.0) throw InvalidArgument("FiberParams: length must be >= 0");
        if (atten_db_per_km < 0.0) throw InvalidArgument("FiberParams: attenuation must be >= 0");
    }

    double loss_db() const { return atten_db_per_km * length_km; }
    double delay_us() const { return group_delay_us_per_km * length_km; }
    double delay_s() const { return delay_us() * 1e-6; }

    /// Phase coefficient beta with H(f) = exp(-i beta f^2).
    double dispersion_phase_coeff() const {
        const double lambda = ref_wavelength_nm * 1e-9;
        const double d_si = dispersion_ps_nm_km * 1e-6;  // s/m^2
        return constants::pi * lambda * lambda * d_si * length_km * 1e3 / constants::speed_of_light;
    }
};

/// All-pass chromatic dispersion response at baseband offset f.
inline cplx dispersion_response(const FiberParams& p, double f) {
    return std::polar(1.0, -p.dispersion_phase_coeff() * f * f);
}

/**
 * Attenuation plus second-order dispersion around the waveform's reference frequency.
 * The bulk group delay is added to delay_s rather than shifting samples.
 */
inline ComplexWaveform propagate_fiber(const ComplexWaveform& field, const FiberParams& p) {
    p.validate();
    require_valid(field, "propagate_fiber");
    if (p.length_km == 0.0) return field;
    const double amp = db_to_amplitude(-p.loss_db());
    const double beta = p.dispersion_phase_coeff();
    ComplexWaveform out = apply_frequency_response(field, [&](double f) {
        return amp * std::polar(1.0, -beta * f * f);
    });
    out.delay_s = field.delay_s + p.delay_s();
    return out;
}

/// First RF frequency where double-sideband power fades to zero after direct detection.
inline double dsb_fading_null(const FiberParams& p, int order = 1) {
    const double beta = p.dispersion_phase_coeff();
    return std::sqrt((2.0 * order - 1.0) * constants::pi / (2.0 * beta));
}

/// One output branch of a 1:n power splitter with excess loss.
inline ComplexWaveform split_power(const ComplexWaveform& field, std::size_t n_ways, double excess_db = 0.0) {
    if (n_ways == 0) throw InvalidArgument("split_power: n_ways must be >= 1");
    const double loss_db = 10.0 * std::log10(static_cast<double>(n_ways)) + excess_db;
    return scaled(field, db_to_amplitude(-loss_db));
}

inline double splitter_loss_db(std::size_t n_ways, double excess_db = 0.0) {
    return 10.0 * std::log10(static_cast<double>(n_ways)) + excess_db;
}

enum class FacetKind { packaged, bare };

inline constexpr double kPackagedFacetLossDb = 2.5;
inline constexpr double kBareFacetLossDb = 6.0;

inline double facet_loss_db(FacetKind k) { return k == FacetKind::packaged ? kPackagedFacetLossDb : kBareFacetLossDb; }

/// Fiber-to-chip-to-fiber coupling: `facets` facets of the given kind.
inline ComplexWaveform couple_chip(const ComplexWaveform& field, FacetKind kind, int facets = 2) {
    return scaled(field, db_to_amplitude(-facet_loss_db(kind) * facets));
}

}  // namespace rofsim
