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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "rofsim/core/fft.hpp"

namespace rofsim {

/**
 * Periodogram of a waveform, one entry per DFT bin.
 *
 * power[k] is the mean power carried by bin k, so the sum over all bins equals
 * mean_power(w) (Parseval). Frequencies are baseband offsets from ref_freq.
 */
class PowerSpectrum {
public:
    PowerSpectrum() = default;

    explicit PowerSpectrum(const ComplexWaveform& w)
        : n_(w.size()), fs_(w.sample_rate), ref_(w.ref_freq), power_(w.size()) {
        const auto X = fft(w.samples);
        const double norm = 1.0 / (static_cast<double>(n_) * static_cast<double>(n_));
        for (std::size_t k = 0; k < n_; ++k) power_[k] = std::norm(X[k]) * norm;
    }

    std::size_t size() const noexcept { return n_; }
    double sample_rate() const noexcept { return fs_; }
    double ref_freq() const noexcept { return ref_; }
    double bin_width() const noexcept { return fs_ / static_cast<double>(n_); }
    double frequency(std::size_t k) const { return bin_frequency(k, n_, fs_); }
    double power(std::size_t k) const { return power_[k]; }

    double total() const { return std::accumulate(power_.begin(), power_.end(), 0.0); }

    /// Power in the closed baseband interval [lo, hi].
    double band(double lo, double hi) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
            const double f = frequency(k);
            if (f >= lo && f <= hi) acc += power_[k];
        }
        return acc;
    }

    /// Power of a tone at baseband frequency f, summed over +-halfwidth_bins.
    double tone(double f, int halfwidth_bins = 1) const {
        const auto centre = static_cast<long long>(frequency_bin(f, n_, fs_));
        double acc = 0.0;
        for (int d = -halfwidth_bins; d <= halfwidth_bins; ++d) {
            long long k = (centre + d) % static_cast<long long>(n_);
            if (k < 0) k += static_cast<long long>(n_);
            acc += power_[static_cast<std::size_t>(k)];
        }
        return acc;
    }

    /// Power-weighted mean frequency inside [lo, hi]; 0 when the band is empty.
    double centroid(double lo, double hi) const {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
            const double f = frequency(k);
            if (f >= lo && f <= hi) {
                num += f * power_[k];
                den += power_[k];
            }
        }
        return den > 0.0 ? num / den : 0.0;
    }

    /// Bin with the largest power inside [lo, hi].
    std::size_t peak_bin(double lo, double hi) const {
        std::size_t best = 0;
        double best_p = -1.0;
        for (std::size_t k = 0; k < n_; ++k) {
            const double f = frequency(k);
            if (f >= lo && f <= hi && power_[k] > best_p) {
                best_p = power_[k];
                best = k;
            }
        }
        return best;
    }

    /// (frequency, power) pairs sorted by frequency.
    std::vector<std::pair<double, double>> sorted() const {
        std::vector<std::pair<double, double>> out(n_);
        for (std::size_t k = 0; k < n_; ++k) out[k] = {frequency(k), power_[k]};
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::size_t n_ = 0;
    double fs_ = 1.0;
    double ref_ = 0.0;
    std::vector<double> power_;
};

/// Power of the single DFT bin nearest baseband frequency f (one O(n) correlation).
inline double tone_power(const ComplexWaveform& w, double f) {
    const std::size_t n = w.size();
    if (n == 0) return 0.0;
    const auto k = static_cast<double>(frequency_bin(f, n, w.sample_rate));
    const cplx step = std::polar(1.0, -2.0 * constants::pi * k / static_cast<double>(n));
    cplx rot = 1.0, acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 1024 == 0) rot = std::polar(1.0, -2.0 * constants::pi * std::fmod(k * static_cast<double>(i), static_cast<double>(n)) / static_cast<double>(n));
        acc += w.samples[i] * rot;
        rot *= step;
    }
    return std::norm(acc / static_cast<double>(n));
}

/// Two-sided bandwidth B such that [-B/2, B/2] holds `fraction` of the power.
inline double occupied_bandwidth(const ComplexWaveform& w, double fraction = 0.999) {
    const PowerSpectrum ps(w);
    const std::size_t n = ps.size();
    const double total = ps.total();
    if (total <= 0.0) return 0.0;
    // Power folded onto |k|, then accumulated outward from DC.
    std::vector<double> folded(n / 2 + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) folded[std::min(k, n - k)] += ps.power(k);
    double acc = 0.0;
    for (std::size_t k = 0; k < folded.size(); ++k) {
        acc += folded[k];
        if (acc >= fraction * total) return 2.0 * static_cast<double>(k) * ps.bin_width() + ps.bin_width();
    }
    return w.sample_rate;
}

inline ComplexWaveform frequency_shift(const ComplexWaveform& w, double df) {
    ComplexWaveform out = w;
    const double step = 2.0 * constants::pi * df / w.sample_rate;
    for (std::size_t n = 0; n < w.size(); ++n)
        out.samples[n] *= std::polar(1.0, step * static_cast<double>(n));
    return out;
}

namespace detail {

inline std::size_t resampled_length(std::size_t n, double from, double to, const char* who) {
    const double exact = static_cast<double>(n) * to / from;
    const double rounded = std::round(exact);
    if (rounded < 1.0 || std::abs(exact - rounded) > 1e-6 * std::max(1.0, exact))
        throw SizingError(std::string(who) + ": length " + std::to_string(n) +
                          " does not map to an integer length at the new rate (" +
                          std::to_string(exact) + ")");
    return static_cast<std::size_t>(rounded);
}

// Copies the |k| < min(n, m)/2 bins of X (centred on bin `centre`) into an m-point spectrum.
inline std::vector<cplx> respectrum(const std::vector<cplx>& X, std::size_t m, long long centre) {
    const auto n = static_cast<long long>(X.size());
    const auto mm = static_cast<long long>(m);
    const long long half = std::min(n, mm) / 2;
    std::vector<cplx> Y(m);
    const double scale = static_cast<double>(m) / static_cast<double>(n);
    for (long long k = -half; k < half + (std::min(n, mm) % 2); ++k) {
        long long src = (k + centre) % n;
        if (src < 0) src += n;
        long long dst = k % mm;
        if (dst < 0) dst += mm;
        Y[static_cast<std::size_t>(dst)] = X[static_cast<std::size_t>(src)] * scale;
    }
    return Y;
}

}  // namespace detail

/// Band-limited (DFT) resampling; exact for waveforms periodic over their length.
inline ComplexWaveform resample(const ComplexWaveform& w, double new_rate) {
    require_valid(w, "resample");
    if (std::abs(new_rate - w.sample_rate) <= 1e-12 * w.sample_rate) return w;
    const std::size_t m = detail::resampled_length(w.size(), w.sample_rate, new_rate, "resample");
    ComplexWaveform out(ifft(detail::respectrum(fft(w.samples), m, 0)), new_rate, w.ref_freq);
    out.delay_s = w.delay_s;
    return out;
}

/**
 * Moves the content around baseband frequency `centre` to 0 and resamples to out_rate,
 * keeping |f - centre| < out_rate / 2. The returned waveform's ref_freq is advanced by
 * `centre`, so optical bands keep their absolute position.
 */
inline ComplexWaveform extract_band(const ComplexWaveform& w, double centre, double out_rate) {
    require_valid(w, "extract_band");
    const std::size_t m = detail::resampled_length(w.size(), w.sample_rate, out_rate, "extract_band");
    const double exact_bin = centre * static_cast<double>(w.size()) / w.sample_rate;
    const double rounded = std::round(exact_bin);
    ComplexWaveform out;
    if (std::abs(exact_bin - rounded) < 1e-9) {
        out.samples = ifft(detail::respectrum(fft(w.samples), m, static_cast<long long>(rounded)));
    } else {
        const auto shifted = frequency_shift(w, -centre);
        out.samples = ifft(detail::respectrum(fft(shifted.samples), m, 0));
    }
    out.sample_rate = out_rate;
    out.ref_freq = w.ref_freq + centre;
    out.delay_s = w.delay_s;
    return out;
}

/// Ideal band-pass: zeroes every bin outside [lo, hi] (baseband Hz).
inline ComplexWaveform bandpass(const ComplexWaveform& w, double lo, double hi) {
    require_valid(w, "bandpass");
    auto X = fft(w.samples);
    const std::size_t n = X.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double f = bin_frequency(k, n, w.sample_rate);
        if (f < lo || f > hi) X[k] = 0.0;
    }
    ComplexWaveform out = w.like(0);
    out.samples = ifft(X);
    return out;
}

/// Hilbert transform of the real part of w (returned as a real waveform).
inline ComplexWaveform hilbert(const ComplexWaveform& w) {
    require_valid(w, "hilbert");
    std::vector<cplx> x(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) x[i] = {w.samples[i].real(), 0.0};
    auto X = fft(x);
    const std::size_t n = X.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double f = bin_frequency(k, n, 1.0);
        const bool nyquist = (n % 2 == 0) && k == n / 2;
        if (k == 0 || nyquist)
            X[k] = 0.0;
        else
            X[k] *= (f > 0.0) ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
    }
    auto y = ifft(X);
    ComplexWaveform out = w.like(n);
    for (std::size_t i = 0; i < n; ++i) out.samples[i] = {y[i].real(), 0.0};
    return out;
}

/// PSD in dBm/Hz against absolute frequency (ref_freq + offset), sorted.
inline std::vector<std::pair<double, double>> psd_dbm_per_hz(const ComplexWaveform& w) {
    const PowerSpectrum ps(w);
    auto rows = ps.sorted();
    const double rbw = ps.bin_width();
    for (auto& [f, p] : rows) {
        f += w.ref_freq;
        p = watt_to_dbm(std::max(p / rbw, 1e-300));
    }
    return rows;
}

}  // namespace rofsim
