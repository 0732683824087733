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
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rofsim/core/fft.hpp"
#include "rofsim/core/spectrum.hpp"
#include "rofsim/photonics/ring.hpp"

namespace rofsim {

namespace detail {

// Chebyshev points of the second kind on [-1, 1] with barycentric weights.
struct ChebyshevGrid {
    std::vector<double> x;
    std::vector<double> w;

    explicit ChebyshevGrid(std::size_t k) : x(k), w(k) {
        for (std::size_t j = 0; j < k; ++j) {
            x[j] = std::cos(constants::pi * static_cast<double>(j) / static_cast<double>(k - 1));
            w[j] = (j % 2 ? -1.0 : 1.0) * ((j == 0 || j == k - 1) ? 0.5 : 1.0);
        }
    }
};

// Nodes needed so that interpolating the ring response over a shift range of half-width
// `half_range` converges to `tol`; the response is analytic in the shift up to
// `pole_distance` off the real axis.
inline std::size_t interpolation_nodes(double half_range, double pole_distance, double tol = 1e-7) {
    if (half_range <= 0.0) return 1;
    const double q = pole_distance / half_range;
    const double rho = q + std::sqrt(1.0 + q * q);
    const double k = std::ceil(std::log(1.0 / tol) / std::log(rho)) + 1.0;
    return static_cast<std::size_t>(std::clamp(k, 3.0, 64.0));
}

/**
 * Quasi-static time-varying ring filter.
 *
 * At every instant the through response is the static response with the resonance
 * moved by shift_hz[n]. The output is sum_j w_j(shift[n]) (H_j * x)[n], where H_j are
 * static responses at Chebyshev nodes spanning the shift range and w_j the barycentric
 * interpolation weights. This is exact for constant shift and for every spectral line
 * of the input individually. `spectrum(shift)` returns the static response on the DFT bins.
 */
template <class Spectrum>
ComplexWaveform quasi_static_filter(const ComplexWaveform& field, std::span<const double> shift_hz,
                                    double pole_distance, Spectrum&& spectrum, double tol = 1e-6) {
    const std::size_t n = field.size();
    const auto X = fft(field.samples);
    const auto [lo_it, hi_it] = std::minmax_element(shift_hz.begin(), shift_hz.end());
    const double lo = *lo_it, hi = *hi_it;
    const double centre = 0.5 * (lo + hi), half = 0.5 * (hi - lo);

    auto filtered = [&](double shift) {
        auto Y = spectrum(shift);
        for (std::size_t k = 0; k < n; ++k) Y[k] *= X[k];
        return ifft(Y);
    };

    ComplexWaveform out = field.like(n);
    if (half <= 1e-9 * std::max(1.0, pole_distance)) {
        out.samples = filtered(centre);
        return out;
    }

    const ChebyshevGrid grid(interpolation_nodes(half, pole_distance, tol));
    const std::size_t k = grid.x.size();
    std::vector<double> u(n), denom(n);
    std::vector<int> exact(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = std::clamp((shift_hz[i] - centre) / half, -1.0, 1.0);
        double d = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double diff = u[i] - grid.x[j];
            if (diff == 0.0) {
                exact[i] = static_cast<int>(j);
                break;
            }
            d += grid.w[j] / diff;
        }
        denom[i] = d;
    }
    for (std::size_t j = 0; j < k; ++j) {
        const auto y = filtered(centre + half * grid.x[j]);
        for (std::size_t i = 0; i < n; ++i) {
            double weight;
            if (exact[i] >= 0)
                weight = exact[i] == static_cast<int>(j) ? 1.0 : 0.0;
            else
                weight = grid.w[j] / (u[i] - grid.x[j]) / denom[i];
            out.samples[i] += weight * y[i];
        }
    }
    return out;
}

inline std::vector<double> drive_to_shift(const RingParams& p, const ComplexWaveform& drive) {
    std::vector<double> s(drive.size());
    for (std::size_t i = 0; i < drive.size(); ++i)
        s[i] = p.mod_efficiency * (p.bias_volt + drive.samples[i].real());
    return s;
}

// Through response of a ring at every DFT bin of an n-point grid, with the resonance
// moved by `shift`. The phasor advances by a fixed rotation per bin and is re-anchored
// every 512 bins to keep the rounding at the 1e-13 level.
inline std::vector<cplx> ring_through_spectrum(const RingParams& p, std::size_t n, double fs, double ref,
                                               double shift) {
    const double t1 = p.self_coupling_t1, t2a = p.self_coupling_t2 * p.roundtrip_amplitude_a;
    const double rt = t1 * t2a;
    const double base = ref - p.resonance_freq - p.tuning_offset - shift;
    const double w = 2.0 * constants::pi / p.fsr;
    const cplx step = std::polar(1.0, w * fs / static_cast<double>(n));
    std::vector<cplx> h(n);
    cplx e;
    for (std::size_t k = 0; k < n; ++k) {
        if (k % 512 == 0 || k == (n + 1) / 2) e = std::polar(1.0, w * (base + bin_frequency(k, n, fs)));
        const cplx num = t1 - t2a * e, den = 1.0 - rt * e;
        h[k] = num * std::conj(den) / std::norm(den);
        e *= step;
    }
    return h;
}

/**
 * Band-local quasi-static ring filter. The output is the static through response at the
 * mid shift over the full band, plus the time-varying correction
 * (H(shift(t)) - H(mid)) computed only for input content within `local_halfwidth` of
 * `centre_offset`, at the reduced rate field.sample_rate / decimation.
 */
inline ComplexWaveform ring_quasi_static_local(const ComplexWaveform& field, std::span<const double> shift_hz,
                                               const RingParams& p, double tol, double centre_offset,
                                               double local_halfwidth, std::size_t decimation) {
    const std::size_t n = field.size();
    const std::size_t m = n / decimation;
    const double fs = field.sample_rate;
    const double bin = fs / static_cast<double>(n);
    const auto X = fft(field.samples);
    const auto [lo_it, hi_it] = std::minmax_element(shift_hz.begin(), shift_hz.end());
    const double mid = 0.5 * (*lo_it + *hi_it), half = 0.5 * (*hi_it - *lo_it);

    const double t1 = p.self_coupling_t1, t2a = p.self_coupling_t2 * p.roundtrip_amplitude_a;
    const double rt = t1 * t2a;
    auto through = [&](cplx e) {
        const cplx num = t1 - t2a * e, den = 1.0 - rt * e;
        return num * std::conj(den) / std::norm(den);
    };
    auto phasor = [&](double f, double s) {
        return std::polar(1.0, 2.0 * constants::pi * (f - p.resonance_freq - p.tuning_offset - s) / p.fsr);
    };

    auto Y = ring_through_spectrum(p, n, fs, field.ref_freq, mid);
    for (std::size_t k = 0; k < n; ++k) Y[k] *= X[k];

    const auto cbin = static_cast<long long>(std::llround(centre_offset / bin));
    const auto nn = static_cast<long long>(n), mm = static_cast<long long>(m);
    auto full_index = [&](long long k) {
        long long i = (cbin + k) % nn;
        return static_cast<std::size_t>(i < 0 ? i + nn : i);
    };
    auto local_index = [&](long long k) { return static_cast<std::size_t>(k < 0 ? k + mm : k); };

    // Nonzero local bins with their phasor at the mid shift and static response.
    std::vector<std::size_t> idx;
    std::vector<cplx> val, e_mid, h_mid;
    const double down = static_cast<double>(m) / static_cast<double>(n);
    for (long long k = -mm / 2; k < mm / 2; ++k) {
        const double off = static_cast<double>(k) * bin;
        if (std::abs(off) > local_halfwidth) continue;
        idx.push_back(local_index(k));
        val.push_back(X[full_index(k)] * down);
        e_mid.push_back(phasor(field.ref_freq + static_cast<double>(cbin + k) * bin, mid));
        h_mid.push_back(through(e_mid.back()));
    }

    // Barycentric interpolation in the normalized shift u; `exact` marks samples on a node.
    const ChebyshevGrid grid(interpolation_nodes(half, ring_pole_distance(p), tol));
    const std::size_t kn = grid.x.size();
    std::vector<double> u(m), inv_denom(m);
    std::vector<int> exact(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        u[i] = std::clamp((shift_hz[i * decimation] - mid) / half, -1.0, 1.0);
        double d = 0.0;
        for (std::size_t j = 0; j < kn; ++j) {
            const double diff = u[i] - grid.x[j];
            if (diff == 0.0) {
                exact[i] = static_cast<int>(j);
                break;
            }
            d += grid.w[j] / diff;
        }
        inv_denom[i] = 1.0 / d;
    }
    std::vector<cplx> D(m), Z(m);
    for (std::size_t j = 0; j < kn; ++j) {
        const cplx rot = std::polar(1.0, -2.0 * constants::pi * half * grid.x[j] / p.fsr);
        for (std::size_t q = 0; q < idx.size(); ++q) Z[idx[q]] = val[q] * (through(e_mid[q] * rot) - h_mid[q]);
        const auto z = ifft(Z);
        const double xj = grid.x[j], wj = grid.w[j];
        for (std::size_t i = 0; i < m; ++i) {
            const double weight = exact[i] < 0 ? wj / (u[i] - xj) * inv_denom[i]
                                               : (exact[i] == static_cast<int>(j) ? 1.0 : 0.0);
            D[i] += weight * z[i];
        }
    }
    const auto Dspec = fft(D);
    const double up = static_cast<double>(n) / static_cast<double>(m);
    for (long long k = -mm / 2; k < mm / 2; ++k) Y[full_index(k)] += Dspec[local_index(k)] * up;

    ComplexWaveform out = field.like(n);
    out.samples = ifft(Y);
    return out;
}

}  // namespace detail

struct QuasiStaticOptions {
    double tolerance = 1e-5;   // interpolation accuracy over the shift range
    bool local_band = true;    // allow the band-local fast path
};

/**
 * Microring modulator on a bus: the field passes the through port while the resonance
 * is moved by mod_efficiency * (bias_volt + drive(t)).
 *
 * When the drive is narrow compared with the sample rate, the time-varying part is
 * evaluated only near the resonance (8 linewidths plus the swing) at a decimated rate
 * that still holds third-order drive products; elsewhere the ring acts statically.
 */
inline ComplexWaveform apply_mrm(const ComplexWaveform& field, const RingParams& params,
                                 const ComplexWaveform& drive, const QuasiStaticOptions& opt = {}) {
    params.validate();
    require_valid(field, "apply_mrm");
    require_same_grid(field, drive, "apply_mrm");
    const auto shift = detail::drive_to_shift(params, drive);
    auto spectrum = [&](double s) {
        return detail::ring_through_spectrum(params, field.size(), field.sample_rate, field.ref_freq, s);
    };
    const double pole = ring_pole_distance(params);
    const auto [lo_it, hi_it] = std::minmax_element(shift.begin(), shift.end());
    const double half = 0.5 * (*hi_it - *lo_it);
    if (opt.local_band && half > 1e-9 * std::max(1.0, pole)) {
        const double fs = field.sample_rate;
        const double f_max = occupied_bandwidth(drive, 0.9999) / 2.0;
        const double w_in = 8.0 * ring_fwhm(params) + 2.0 * half;
        const double r_min = 2.0 * w_in + 6.0 * f_max;
        std::size_t dec = 1;
        while (field.size() % (2 * dec) == 0 && fs / static_cast<double>(2 * dec) >= r_min) dec *= 2;
        if (dec > 1) {
            const double centre = params.resonance_freq + params.tuning_offset +
                                  0.5 * (*hi_it + *lo_it) - field.ref_freq;
            return detail::ring_quasi_static_local(field, shift, params, opt.tolerance, centre, w_in, dec);
        }
    }
    return detail::quasi_static_filter(field, shift, pole, spectrum, opt.tolerance);
}

/// apply_mrm with no drive: static filtering at the bias point.
inline ComplexWaveform apply_mrm_static(const ComplexWaveform& field, const RingParams& params) {
    params.validate();
    require_valid(field, "apply_mrm_static");
    const double s = params.mod_efficiency * params.bias_volt;
    auto X = fft(field.samples);
    const auto h = detail::ring_through_spectrum(params, X.size(), field.sample_rate, field.ref_freq, s);
    for (std::size_t k = 0; k < X.size(); ++k) X[k] *= h[k];
    ComplexWaveform out = field.like(0);
    out.samples = ifft(X);
    return out;
}

enum class Sideband { upper, lower };

struct IqMrmConfig {
    RingParams ring_i;
    RingParams ring_q;
    double branch_phase = std::numbers::pi / 2.0;
    Sideband sideband = Sideband::upper;
};

/// One ring of an IQ modulator arm, with its drive.
struct IqArmRing {
    RingParams ring;
    ComplexWaveform drive;
};

/**
 * Ring-assisted IQ modulator: the field splits into two arms, each a bus of rings, the
 * Q arm is delayed in phase by `phase`, and the arms recombine. One ring per WDM tone
 * sits in each arm, so a single interferometer serves the whole comb.
 */
inline ComplexWaveform iq_mrm_bus(const ComplexWaveform& field, std::span<const IqArmRing> arm_i,
                                  std::span<const IqArmRing> arm_q, double phase) {
    require_valid(field, "iq_mrm_bus");
    ComplexWaveform a = scaled(field, 1.0 / std::sqrt(2.0));
    ComplexWaveform b = a;
    for (const auto& r : arm_i) a = apply_mrm(a, r.ring, r.drive);
    for (const auto& r : arm_q) b = apply_mrm(b, r.ring, r.drive);
    const cplx rot = std::polar(1.0, phase);
    ComplexWaveform out = field.like(field.size());
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < field.size(); ++i) out.samples[i] = s * (a.samples[i] + rot * b.samples[i]);
    return out;
}

/// Single-tone IQ microring modulator; q_drive should be the Hilbert pair of i_drive.
inline ComplexWaveform iq_mrm_ssb(const ComplexWaveform& field, const IqMrmConfig& cfg,
                                  const ComplexWaveform& i_drive, const ComplexWaveform& q_drive) {
    require_same_grid(i_drive, q_drive, "iq_mrm_ssb");
    const IqArmRing ai[] = {{cfg.ring_i, i_drive}};
    const IqArmRing aq[] = {{cfg.ring_q, q_drive}};
    const double phase = cfg.sideband == Sideband::upper ? cfg.branch_phase : -cfg.branch_phase;
    return iq_mrm_bus(field, ai, aq, phase);
}

/// Image-rejection ratio (dB) of an IQ modulator with a quadrature error delta (rad).
inline double analytic_image_rejection_db(double phase_error) {
    const double c = std::cos(phase_error);
    return 10.0 * std::log10((1.0 + c) / (1.0 - c));
}

/// Bias that parks the resonance exactly on `tone` (the through-port null for critical coupling).
inline double null_bias_volt(const RingParams& p, double tone) {
    if (p.mod_efficiency == 0.0) throw InvalidArgument("null_bias_volt: mod_efficiency is zero");
    return (tone - p.resonance_freq - p.tuning_offset) / p.mod_efficiency;
}

/**
 * Clock amplitude (V) for a target carrier suppression at null bias. Near the null the
 * through field is ~ i d/g + (d/g)^2 with d the shift and g the half linewidth, so the
 * sideband-to-carrier ratio is (g / A)^2 for a shift amplitude A.
 */
inline double clock_amplitude_for_suppression(const RingParams& p, double suppression_db) {
    if (p.mod_efficiency == 0.0)
        throw InvalidArgument("clock_amplitude_for_suppression: mod_efficiency is zero");
    const double half_width = ring_fwhm(p) / 2.0;
    return half_width * std::pow(10.0, -suppression_db / 20.0) / std::abs(p.mod_efficiency);
}

struct SubcarrierOptions {
    std::optional<double> clock_amplitude_volt;  // default: from carrier_suppression_db
    double carrier_suppression_db = 20.0;
    double clock_phase = 0.0;
};

/**
 * Drives a ring with a clock at f_s so the tone it sits on acquires subcarriers at +-f_s.
 * Throws if f_s aliases or if no tone lies within one linewidth of the biased resonance.
 */
inline ComplexWaveform generate_subcarriers(const ComplexWaveform& field, const RingParams& params,
                                            double clock_freq, const SubcarrierOptions& opt = {}) {
    params.validate();
    require_valid(field, "generate_subcarriers");
    if (!(clock_freq > 0.0) || clock_freq >= field.sample_rate / 2.0)
        throw AliasingError("generate_subcarriers: clock " + std::to_string(clock_freq) +
                            " Hz outside (0, " + std::to_string(field.sample_rate / 2.0) + ")");
    const double res = biased_resonance(params) - field.ref_freq;
    const double fwhm = ring_fwhm(params);
    const PowerSpectrum ps(field);
    const double near = ps.band(res - fwhm, res + fwhm);
    if (near < 1e-3 * ps.total() || near <= 0.0)
        throw ToneNotFoundError("generate_subcarriers: no optical tone within one linewidth of the "
                                "ring resonance at offset " + std::to_string(res) + " Hz");
    const double amp = opt.clock_amplitude_volt.value_or(
        params.mod_efficiency != 0.0 ? 0.9 * clock_amplitude_for_suppression(params, opt.carrier_suppression_db)
                                     : 0.0);
    ComplexWaveform drive = field.like(field.size());
    drive.ref_freq = 0.0;
    const double step = 2.0 * constants::pi * clock_freq / field.sample_rate;
    for (std::size_t i = 0; i < drive.size(); ++i)
        drive.samples[i] = {amp * std::cos(step * static_cast<double>(i) + opt.clock_phase), 0.0};
    return apply_mrm(field, params, drive);
}

}  // namespace rofsim
