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
#include <span>
#include <string>
#include <vector>

#include "rofsim/core/spectrum.hpp"
#include "rofsim/signal/ofdm.hpp"
#include "rofsim/signal/rf.hpp"

namespace rofsim {

/// Simulation time grid: every waveform of a run is one periodic chunk of this length.
struct ChunkGrid {
    double sample_rate = 256e9;
    std::size_t samples = 1 << 18;

    double duration() const { return static_cast<double>(samples) / sample_rate; }
    double bin_width() const { return sample_rate / static_cast<double>(samples); }

    /// True when f is an integer number of bins (periodic over the chunk).
    bool on_grid(double f) const {
        const double k = f / bin_width();
        return std::abs(k - std::round(k)) < 1e-6;
    }
};

enum class PayloadKind { digital, rof };

inline const char* to_string(PayloadKind k) { return k == PayloadKind::digital ? "digital" : "rof"; }

/**
 * An OFDM signal placed on a real electrical carrier. The occupied band is
 * [center_hz - B/2, center_hz + B/2] with B = ofdm.occupied_bandwidth.
 */
struct PayloadSpec {
    std::string name;
    PayloadKind kind = PayloadKind::rof;
    OfdmConfig ofdm;
    double center_hz = 1e9;
    double drive_rms_volt = 0.1;  // RMS while a frame is on air

    double band_low() const { return center_hz - ofdm.occupied_bandwidth / 2.0; }
    double band_high() const { return center_hz + ofdm.occupied_bandwidth / 2.0; }
    double native_rate() const { return ofdm.native_sample_rate(); }
    /// Electrical frequency of OFDM subcarrier 0.
    double carrier_hz() const { return center_hz - ofdm.band_centre_offset(); }

    void validate() const {
        ofdm.validate();
        if (band_low() <= 0.0)
            throw ValidationError("payload '" + name + "': band [" + num(band_low()) + ", " +
                                  num(band_high()) + "] Hz must lie above DC");
        if (!(drive_rms_volt >= 0.0))
            throw ValidationError("payload '" + name + "': drive_rms_volt must be >= 0");
    }

    /// Native-rate samples per chunk; throws unless the resampling is exact.
    std::size_t native_samples(const ChunkGrid& g) const {
        return detail::resampled_length(g.samples, g.sample_rate, native_rate(), "payload");
    }

    std::size_t frames_per_chunk(const ChunkGrid& g) const { return native_samples(g) / ofdm.frame_length(); }
    std::size_t bits_per_chunk(const ChunkGrid& g) const { return frames_per_chunk(g) * ofdm.bits_per_frame(); }

    /// Checks that the payload fits the grid: whole frames, carrier on a DFT bin, below Nyquist.
    void validate_on(const ChunkGrid& g) const {
        validate();
        if (frames_per_chunk(g) == 0)
            throw ValidationError("payload '" + name + "': one OFDM frame (" +
                                  num(ofdm.frame_duration()) + " s) is longer than the chunk (" +
                                  num(g.duration()) + " s)");
        if (!g.on_grid(carrier_hz()))
            throw ValidationError("payload '" + name + "': carrier " + num(carrier_hz()) +
                                  " Hz is not a multiple of the chunk bin width " + num(g.bin_width()));
        if (band_high() >= g.sample_rate / 2.0)
            throw ValidationError("payload '" + name + "': band edge above Nyquist");
    }
};

/**
 * Real electrical drive for one chunk: frames_per_chunk OFDM frames from `bits`, zero
 * padded to the chunk, moved to center_hz and scaled to drive_rms_volt (on-air RMS).
 */
inline ComplexWaveform make_drive(const PayloadSpec& p, std::span<const std::uint8_t> bits, const ChunkGrid& g) {
    p.validate_on(g);
    if (bits.size() != p.bits_per_chunk(g))
        throw SizingError("make_drive: payload '" + p.name + "' needs " + num(p.bits_per_chunk(g)) +
                          " bits per chunk, got " + num(bits.size()));
    auto base = generate_ofdm(p.ofdm, bits);
    base.samples.resize(p.native_samples(g));
    const auto wide = resample(base, g.sample_rate);
    auto out = upconvert_real(wide, p.carrier_hz(), p.ofdm.occupied_bandwidth + p.ofdm.subcarrier_spacing());
    for (auto& v : out.samples) v *= p.drive_rms_volt;
    return out;
}

/**
 * Complex baseband of the payload band (subcarrier 0 at DC) from a real electrical
 * signal, behind an ideal receive filter one subcarrier wider than the band on each side.
 */
inline ComplexWaveform extract_payload_band(const PayloadSpec& p, const ComplexWaveform& electrical) {
    const double c = p.ofdm.band_centre_offset();
    const double half = p.ofdm.occupied_bandwidth / 2.0 + p.ofdm.subcarrier_spacing();
    return bandpass(extract_band(electrical, p.carrier_hz(), p.native_rate()), c - half, c + half);
}

/// Demodulates the frames of one chunk from a payload band produced by extract_payload_band.
inline OfdmDemodResult demodulate_payload_band(const PayloadSpec& p, const ComplexWaveform& band,
                                               std::size_t frames) {
    OfdmDemodOptions opt;
    opt.n_frames = frames;
    return demodulate_ofdm(p.ofdm, band, opt);
}

/**
 * Complex noise variance per sample in a band extracted at out_rate from real noise of
 * one-sided PSD psd (two-sided psd / 2 over the out_rate-wide band).
 */
inline double band_noise_variance(double one_sided_psd, double out_rate) { return one_sided_psd / 2.0 * out_rate; }

}  // namespace rofsim
