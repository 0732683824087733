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
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "rofsim/core/error.hpp"

namespace rofsim {

using cplx = std::complex<double>;

namespace constants {
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double planck = 6.62607015e-34;       // J s
inline constexpr double electron_charge = 1.602176634e-19;  // C
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }
inline double dbm_to_watt(double dbm) { return 1e-3 * db_to_linear(dbm); }
inline double watt_to_dbm(double w) { return linear_to_db(w / 1e-3); }
inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

/**
 * Uniformly sampled complex envelope.
 *
 * Samples are in sqrt(W) for optical fields so |s|^2 is instantaneous power, and in
 * volts or amperes for electrical signals. ref_freq is the absolute frequency of the
 * complex-baseband origin (0 for electrical signals). Bulk propagation delay is not
 * applied to the samples; it accumulates in delay_s.
 */
struct ComplexWaveform {
    std::vector<cplx> samples;
    double sample_rate = 1.0;
    double ref_freq = 0.0;
    double delay_s = 0.0;

    ComplexWaveform() = default;
    ComplexWaveform(std::vector<cplx> s, double fs, double ref = 0.0)
        : samples(std::move(s)), sample_rate(fs), ref_freq(ref) {}

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
    double duration() const noexcept { return static_cast<double>(samples.size()) / sample_rate; }
    double time_at(std::size_t n) const noexcept { return static_cast<double>(n) / sample_rate; }
    bool is_optical() const noexcept { return ref_freq > 0.0; }

    /// Same rate/reference/delay, zero samples of length n.
    ComplexWaveform like(std::size_t n) const {
        ComplexWaveform w(std::vector<cplx>(n), sample_rate, ref_freq);
        w.delay_s = delay_s;
        return w;
    }
};

inline void require_valid(const ComplexWaveform& w, const char* who) {
    if (!(w.sample_rate > 0.0))
        throw InvalidArgument(std::string(who) + ": sample_rate must be positive");
    if (w.empty()) throw SizingError(std::string(who) + ": waveform has no samples");
}

inline void require_same_grid(const ComplexWaveform& a, const ComplexWaveform& b, const char* who) {
    if (std::abs(a.sample_rate - b.sample_rate) > 1e-9 * a.sample_rate)
        throw SampleRateMismatchError(std::string(who) + ": sample rates differ (" +
                                      std::to_string(a.sample_rate) + " vs " +
                                      std::to_string(b.sample_rate) + ")");
    if (a.size() != b.size())
        throw LengthMismatchError(std::string(who) + ": waveform lengths differ (" +
                                  std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                  ")");
}

inline double mean_power(std::span<const cplx> s) {
    if (s.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& v : s) acc += std::norm(v);
    return acc / static_cast<double>(s.size());
}

inline double mean_power(const ComplexWaveform& w) { return mean_power(w.samples); }

/// Sum |s|^2 / fs (joules for optical fields).
inline double energy(const ComplexWaveform& w) {
    return mean_power(w) * static_cast<double>(w.size()) / w.sample_rate;
}

inline bool is_real(const ComplexWaveform& w, double rel_tol = 1e-9) {
    const double scale = std::sqrt(mean_power(w)) + 1e-300;
    for (const auto& v : w.samples)
        if (std::abs(v.imag()) > rel_tol * scale) return false;
    return true;
}

inline std::vector<double> real_part(const ComplexWaveform& w) {
    std::vector<double> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = w.samples[i].real();
    return r;
}

inline ComplexWaveform from_real(std::span<const double> x, double fs) {
    std::vector<cplx> s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = {x[i], 0.0};
    return {std::move(s), fs, 0.0};
}

inline ComplexWaveform scaled(ComplexWaveform w, double amplitude_factor) {
    for (auto& v : w.samples) v *= amplitude_factor;
    return w;
}

/// Scales w so its mean power equals target (W).
inline ComplexWaveform with_power(ComplexWaveform w, double target) {
    const double p = mean_power(w);
    if (p <= 0.0) return w;
    return scaled(std::move(w), std::sqrt(target / p));
}

inline ComplexWaveform add(const ComplexWaveform& a, const ComplexWaveform& b) {
    require_same_grid(a, b, "add");
    ComplexWaveform out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out.samples[i] += b.samples[i];
    return out;
}

}  // namespace rofsim
