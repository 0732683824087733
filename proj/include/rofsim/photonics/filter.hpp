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
#include <vector>

#include "rofsim/core/fft.hpp"

namespace rofsim {

/// Maximally flat (Butterworth-shaped) drop filter standing in for a higher-order ring.
struct DropFilterSpec {
    double center = 193.4e12;   // absolute Hz
    double bandwidth = 10e9;    // 3 dB width
    int order = 2;
    double insertion_loss_db = 0.0;

    void validate() const {
        if (order < 1) throw InvalidArgument("DropFilterSpec: order must be >= 1");
        if (!(bandwidth > 0.0)) throw InvalidArgument("DropFilterSpec: bandwidth must be positive");
        if (insertion_loss_db < 0.0) throw InvalidArgument("DropFilterSpec: insertion loss must be >= 0");
    }

    /// The same filter moved by df (thermal retuning).
    DropFilterSpec shifted(double df) const {
        DropFilterSpec s = *this;
        s.center += df;
        return s;
    }
};

struct DropResponse {
    cplx drop;
    cplx through;
};

/**
 * Power-complementary pair H_drop = 1/D(s), H_thru = s^n/D(s) with s = j(f - fc)/(B/2)
 * and D the normalized Butterworth polynomial, so |H_drop|^2 + |H_thru|^2 = 1 before
 * insertion loss.
 */
inline DropResponse drop_filter_response(const DropFilterSpec& spec, double freq) {
    const double x = (freq - spec.center) / (spec.bandwidth / 2.0);
    const cplx s(0.0, x);
    cplx d = 1.0;
    cplx sn = 1.0;
    const int n = spec.order;
    for (int k = 1; k <= n; ++k) {
        const cplx pole = std::polar(1.0, constants::pi * (2.0 * k + n - 1.0) / (2.0 * n));
        d *= (s - pole);
        sn *= s;
    }
    const double loss = db_to_amplitude(-spec.insertion_loss_db);
    return {loss / d, loss * sn / d};
}

struct DropResult {
    ComplexWaveform dropped;
    ComplexWaveform through;
};

inline DropResult drop_filter(const ComplexWaveform& field, const DropFilterSpec& spec) {
    spec.validate();
    require_valid(field, "drop_filter");
    const double offset = spec.center - field.ref_freq;
    if (std::abs(offset) + spec.bandwidth / 2.0 > field.sample_rate / 2.0)
        throw AliasingError("drop_filter: band at offset " + std::to_string(offset) + " Hz (width " +
                            std::to_string(spec.bandwidth) + " Hz) is outside the simulated +-" +
                            std::to_string(field.sample_rate / 2.0) + " Hz");
    const auto X = fft(field.samples);
    const std::size_t n = X.size();
    std::vector<cplx> D(n), T(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto r = drop_filter_response(spec, field.ref_freq + bin_frequency(k, n, field.sample_rate));
        D[k] = X[k] * r.drop;
        T[k] = X[k] * r.through;
    }
    DropResult out{field.like(0), field.like(0)};
    out.dropped.samples = ifft(D);
    out.through.samples = ifft(T);
    return out;
}

inline DropResult drop_filter(const ComplexWaveform& field, double center, double bandwidth, int order) {
    return drop_filter(field, DropFilterSpec{center, bandwidth, order, 0.0});
}

}  // namespace rofsim
