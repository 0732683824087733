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
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rofsim/core/fft.hpp"
#include "rofsim/core/random.hpp"
#include "rofsim/core/spectrum.hpp"
#include "rofsim/signal/metrics.hpp"
#include "rofsim/signal/qam.hpp"

namespace rofsim {

/**
 * CP-OFDM frame layout.
 *
 * n_subcarriers modulated subcarriers span occupied_bandwidth around DC; the IFFT is
 * twice as long (2x native oversampling), so the native sample rate is
 * 2 * occupied_bandwidth. A frame is one known preamble symbol followed by
 * data_symbols_per_frame data symbols carrying comb pilots every pilot_spacing
 * subcarriers. The preamble and pilot values are drawn from `seed`.
 */
struct OfdmConfig {
    std::size_t n_subcarriers = 64;
    int qam_order = 4;
    double cp_fraction = 1.0 / 16.0;
    double occupied_bandwidth = 1e9;
    std::size_t pilot_spacing = 8;
    std::uint64_t seed = 1;
    std::size_t data_symbols_per_frame = 16;
    std::size_t equalizer_window = 5;

    void validate() const {
        if (n_subcarriers < 8 || !std::has_single_bit(n_subcarriers))
            throw InvalidArgument("OFDM: n_subcarriers must be a power of two >= 8, got " +
                                  std::to_string(n_subcarriers));
        QamMapper check(qam_order);
        if (!(cp_fraction >= 0.0 && cp_fraction <= 0.5))
            throw InvalidArgument("OFDM: cp_fraction must lie in [0, 0.5]");
        if (!(occupied_bandwidth > 0.0))
            throw InvalidArgument("OFDM: occupied_bandwidth must be positive");
        if (pilot_spacing < 2 || pilot_spacing > n_subcarriers)
            throw InvalidArgument("OFDM: pilot_spacing must lie in [2, n_subcarriers]");
        if (data_symbols_per_frame == 0)
            throw InvalidArgument("OFDM: data_symbols_per_frame must be >= 1");
        if (equalizer_window == 0 || equalizer_window % 2 == 0)
            throw InvalidArgument("OFDM: equalizer_window must be odd");
    }

    std::size_t fft_size() const { return 2 * n_subcarriers; }
    std::size_t cp_length() const {
        return static_cast<std::size_t>(std::lround(cp_fraction * static_cast<double>(fft_size())));
    }
    std::size_t symbol_length() const { return fft_size() + cp_length(); }
    std::size_t frame_length() const { return (data_symbols_per_frame + 1) * symbol_length(); }
    double native_sample_rate() const { return 2.0 * occupied_bandwidth; }
    double subcarrier_spacing() const {
        return occupied_bandwidth / static_cast<double>(n_subcarriers);
    }
    /// Subcarriers sit at k * spacing for k in [-N/2, N/2 - 1], so the band centre is half a bin below DC.
    double band_centre_offset() const { return -0.5 * subcarrier_spacing(); }
    std::size_t n_pilots() const {
        const std::size_t first = pilot_spacing / 2;
        return first < n_subcarriers ? (n_subcarriers - 1 - first) / pilot_spacing + 1 : 0;
    }
    std::size_t n_data_subcarriers() const { return n_subcarriers - n_pilots(); }
    int bits_per_qam_symbol() const { return QamMapper(qam_order).bits_per_symbol(); }
    std::size_t bits_per_frame() const {
        return data_symbols_per_frame * n_data_subcarriers() *
               static_cast<std::size_t>(bits_per_qam_symbol());
    }
    double data_subcarrier_fraction() const {
        return static_cast<double>(n_data_subcarriers()) / static_cast<double>(n_subcarriers);
    }
    double frame_duration() const {
        return static_cast<double>(frame_length()) / native_sample_rate();
    }

    /// Net bit rate with cyclic-prefix, pilot and preamble overheads accounted.
    double bit_rate() const { return static_cast<double>(bits_per_frame()) / frame_duration(); }
};

namespace detail {

struct OfdmLayout {
    std::vector<std::size_t> fft_bin;        // per modulated subcarrier
    std::vector<std::size_t> data_index;     // subcarrier indices carrying data
    std::vector<std::size_t> pilot_index;    // subcarrier indices carrying pilots
    std::vector<cplx> preamble;              // per subcarrier
    std::vector<std::vector<cplx>> pilots;   // [data symbol][pilot]
    double time_scale = 1.0;                 // unit average power in time domain
};

inline OfdmLayout make_layout(const OfdmConfig& cfg) {
    OfdmLayout l;
    const std::size_t n = cfg.n_subcarriers;
    const std::size_t nf = cfg.fft_size();
    l.fft_bin.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long long k = static_cast<long long>(i) - static_cast<long long>(n / 2);
        l.fft_bin[i] = static_cast<std::size_t>((k + static_cast<long long>(nf)) %
                                                static_cast<long long>(nf));
        if (i % cfg.pilot_spacing == cfg.pilot_spacing / 2)
            l.pilot_index.push_back(i);
        else
            l.data_index.push_back(i);
    }
    Rng rng(derive_seed(cfg.seed, 0x0fd3));
    const double a = 1.0 / std::sqrt(2.0);
    auto qpsk = [&] {
        const auto r = rng();
        return cplx((r & 1) ? a : -a, (r & 2) ? a : -a);
    };
    l.preamble.resize(n);
    for (auto& p : l.preamble) p = qpsk();
    l.pilots.assign(cfg.data_symbols_per_frame, std::vector<cplx>(l.pilot_index.size()));
    for (auto& sym : l.pilots)
        for (auto& p : sym) p = (rng() & 1) ? cplx(1.0, 0.0) : cplx(-1.0, 0.0);
    l.time_scale = static_cast<double>(nf) / std::sqrt(static_cast<double>(n));
    return l;
}

inline void write_symbol(const OfdmConfig& cfg, const OfdmLayout& l, const std::vector<cplx>& X,
                         std::vector<cplx>& out) {
    auto body = ifft(X);
    const std::size_t nf = cfg.fft_size();
    const std::size_t cp = cfg.cp_length();
    for (std::size_t i = nf - cp; i < nf; ++i) out.push_back(body[i] * l.time_scale);
    for (std::size_t i = 0; i < nf; ++i) out.push_back(body[i] * l.time_scale);
}

// Moving average across subcarriers after removing the mean linear phase slope.
inline std::vector<cplx> smooth_response(const std::vector<cplx>& h, std::size_t window) {
    const std::size_t n = h.size();
    if (window <= 1 || n < 2) return h;
    cplx acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) acc += h[i + 1] * std::conj(h[i]);
    const double slope = std::arg(acc);
    std::vector<cplx> flat(n), out(n);
    for (std::size_t i = 0; i < n; ++i) flat[i] = h[i] * std::polar(1.0, -slope * static_cast<double>(i));
    const auto half = static_cast<long long>(window / 2);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = 0.0;
        int count = 0;
        for (long long d = -half; d <= half; ++d) {
            const long long j = static_cast<long long>(i) + d;
            if (j < 0 || j >= static_cast<long long>(n)) continue;
            s += flat[static_cast<std::size_t>(j)];
            ++count;
        }
        out[i] = s / static_cast<double>(count) * std::polar(1.0, slope * static_cast<double>(i));
    }
    return out;
}

}  // namespace detail

/// Builds the CP-OFDM waveform (native rate, unit average power) carrying payload_bits.
inline ComplexWaveform generate_ofdm(const OfdmConfig& cfg, std::span<const std::uint8_t> payload_bits) {
    cfg.validate();
    const std::size_t bpf = cfg.bits_per_frame();
    if (payload_bits.empty() || payload_bits.size() % bpf != 0)
        throw SizingError("generate_ofdm: payload of " + std::to_string(payload_bits.size()) +
                          " bits is not a positive multiple of the " + std::to_string(bpf) +
                          " bits per frame");
    const auto l = detail::make_layout(cfg);
    const QamMapper qam(cfg.qam_order);
    const auto bps = static_cast<std::size_t>(qam.bits_per_symbol());
    const std::size_t frames = payload_bits.size() / bpf;
    const std::size_t nf = cfg.fft_size();

    std::vector<cplx> out;
    out.reserve(frames * cfg.frame_length());
    std::size_t bit = 0;
    std::vector<cplx> X(nf);
    for (std::size_t f = 0; f < frames; ++f) {
        std::fill(X.begin(), X.end(), cplx{});
        for (std::size_t i = 0; i < cfg.n_subcarriers; ++i) X[l.fft_bin[i]] = l.preamble[i];
        detail::write_symbol(cfg, l, X, out);
        for (std::size_t s = 0; s < cfg.data_symbols_per_frame; ++s) {
            std::fill(X.begin(), X.end(), cplx{});
            for (std::size_t p = 0; p < l.pilot_index.size(); ++p)
                X[l.fft_bin[l.pilot_index[p]]] = l.pilots[s][p];
            for (auto i : l.data_index) {
                X[l.fft_bin[i]] = qam.map(payload_bits.subspan(bit, bps));
                bit += bps;
            }
            detail::write_symbol(cfg, l, X, out);
        }
    }
    return {std::move(out), cfg.native_sample_rate(), 0.0};
}

struct OfdmDemodResult {
    std::vector<std::uint8_t> bits;
    double evm_rms = 0.0;
    std::size_t n_frames = 0;
    std::size_t data_symbols = 0;     // QAM symbols decided
    std::size_t timing_offset = 0;    // detected start of the first preamble body
    double sync_metric = 0.0;         // normalized correlation peak in [0, 1]
};

struct OfdmDemodOptions {
    std::optional<std::size_t> n_frames;  // default: as many as fit
    double sync_threshold = 0.25;
};

/**
 * Receiver for generate_ofdm waveforms.
 *
 * Timing comes from a circular correlation against the preamble; the first (earliest)
 * near-maximal peak defines frame 0. The one-tap equalizer starts from a smoothed
 * least-squares preamble estimate, is refined decision-directed over the whole frame,
 * and each data symbol is de-rotated by its pilots.
 */
inline OfdmDemodResult demodulate_ofdm(const OfdmConfig& cfg, const ComplexWaveform& input,
                                       const OfdmDemodOptions& opt = {}) {
    cfg.validate();
    require_valid(input, "demodulate_ofdm");
    const ComplexWaveform wf = resample(input, cfg.native_sample_rate());
    const auto l = detail::make_layout(cfg);
    const QamMapper qam(cfg.qam_order);
    const std::size_t L = wf.size();
    const std::size_t nf = cfg.fft_size();
    const std::size_t cp = cfg.cp_length();
    const std::size_t sym_len = cfg.symbol_length();
    const std::size_t frame_len = cfg.frame_length();
    if (L < frame_len)
        throw SizingError("demodulate_ofdm: waveform of " + std::to_string(L) +
                          " samples is shorter than one frame (" + std::to_string(frame_len) + ")");

    // Preamble body reference.
    std::vector<cplx> X(nf);
    for (std::size_t i = 0; i < cfg.n_subcarriers; ++i) X[l.fft_bin[i]] = l.preamble[i];
    auto pre_time = ifft(X);
    double pre_energy = 0.0;
    for (auto& v : pre_time) {
        v *= l.time_scale;
        pre_energy += std::norm(v);
    }

    // Circular cross-correlation c[d] = sum_m r[m + d] conj(p[m]).
    std::vector<cplx> ppad(L);
    std::copy(pre_time.begin(), pre_time.end(), ppad.begin());
    auto R = fft(wf.samples);
    auto P = fft(ppad);
    for (std::size_t k = 0; k < L; ++k) R[k] *= std::conj(P[k]);
    const auto corr = ifft(R);

    std::vector<double> prefix(2 * L + 1, 0.0);
    for (std::size_t i = 0; i < 2 * L; ++i) prefix[i + 1] = prefix[i] + std::norm(wf.samples[i % L]);
    const double mean_window = prefix[L] / static_cast<double>(L) * static_cast<double>(nf);
    std::vector<double> metric(L, 0.0);
    double best = 0.0;
    for (std::size_t d = 0; d < L; ++d) {
        const double e = prefix[d + nf] - prefix[d];
        if (e < 1e-3 * mean_window || e <= 0.0) continue;
        metric[d] = std::norm(corr[d]) / (e * pre_energy);
        best = std::max(best, metric[d]);
    }
    if (best < opt.sync_threshold)
        throw SynchronizationError("demodulate_ofdm: preamble not found (peak metric " +
                                   std::to_string(best) + ")");
    long long start = 0;
    bool found = false;
    for (std::size_t d = 0; d < L; ++d) {
        if (metric[d] < 0.9 * best) continue;
        // Peaks in the last half frame are early arrivals wrapped around the end.
        const long long signed_d = d + frame_len / 2 < L
                                       ? static_cast<long long>(d)
                                       : static_cast<long long>(d) - static_cast<long long>(L);
        if (!found || signed_d < start) {
            start = signed_d;
            found = true;
        }
    }

    const std::size_t frames = opt.n_frames.value_or(L / frame_len);
    if (frames == 0 || frames * frame_len > L)
        throw SizingError("demodulate_ofdm: " + std::to_string(frames) +
                          " frames do not fit in the waveform");

    OfdmDemodResult res;
    res.n_frames = frames;
    res.timing_offset = static_cast<std::size_t>((start % static_cast<long long>(L) + static_cast<long long>(L)) %
                                                 static_cast<long long>(L));
    res.sync_metric = best;
    res.bits.reserve(frames * cfg.bits_per_frame());

    const long long backoff = static_cast<long long>(cp / 2);
    const std::size_t n_sym = cfg.data_symbols_per_frame + 1;
    const std::size_t n = cfg.n_subcarriers;
    std::vector<cplx> buf(nf);
    double err_acc = 0.0, ref_acc = 0.0;

    for (std::size_t f = 0; f < frames; ++f) {
        // Y[s][i]: received value of subcarrier i in symbol s (s = 0 is the preamble).
        std::vector<std::vector<cplx>> Y(n_sym, std::vector<cplx>(n));
        for (std::size_t s = 0; s < n_sym; ++s) {
            const long long w0 = start + static_cast<long long>(f * frame_len + s * sym_len) - backoff;
            for (std::size_t m = 0; m < nf; ++m) {
                long long idx = (w0 + static_cast<long long>(m)) % static_cast<long long>(L);
                if (idx < 0) idx += static_cast<long long>(L);
                buf[m] = wf.samples[static_cast<std::size_t>(idx)];
            }
            const auto F = fft(buf);
            for (std::size_t i = 0; i < n; ++i) Y[s][i] = F[l.fft_bin[i]];
        }

        std::vector<cplx> H(n);
        for (std::size_t i = 0; i < n; ++i) H[i] = Y[0][i] / l.preamble[i];
        H = detail::smooth_response(H, cfg.equalizer_window);

        std::vector<std::vector<cplx>> ref(n_sym, std::vector<cplx>(n));
        ref[0] = l.preamble;
        std::vector<std::vector<cplx>> Z(n_sym, std::vector<cplx>(n));

        // Common phase error per symbol from the pilots, or from every subcarrier once
        // decisions are available.
        auto equalize = [&](bool use_decisions) {
            for (std::size_t s = 1; s < n_sym; ++s) {
                for (std::size_t i = 0; i < n; ++i) Z[s][i] = Y[s][i] / H[i];
                cplx cpe = 0.0;
                double pw = 0.0;
                if (use_decisions) {
                    for (std::size_t i = 0; i < n; ++i) {
                        cpe += Z[s][i] * std::conj(ref[s][i]);
                        pw += std::norm(ref[s][i]);
                    }
                } else {
                    for (std::size_t p = 0; p < l.pilot_index.size(); ++p) {
                        cpe += Z[s][l.pilot_index[p]] * std::conj(l.pilots[s - 1][p]);
                        pw += std::norm(l.pilots[s - 1][p]);
                    }
                }
                if (pw > 0.0 && std::abs(cpe) > 0.0) {
                    cpe /= pw;
                    for (auto& z : Z[s]) z /= cpe;
                }
                for (std::size_t p = 0; p < l.pilot_index.size(); ++p)
                    ref[s][l.pilot_index[p]] = l.pilots[s - 1][p];
                for (auto i : l.data_index) ref[s][i] = qam.slice(Z[s][i]);
            }
        };

        equalize(false);
        // Decision-directed refinement over every symbol of the frame.
        std::vector<cplx> num(n, 0.0);
        std::vector<double> den(n, 0.0);
        for (std::size_t s = 0; s < n_sym; ++s)
            for (std::size_t i = 0; i < n; ++i) {
                num[i] += Y[s][i] * std::conj(ref[s][i]);
                den[i] += std::norm(ref[s][i]);
            }
        for (std::size_t i = 0; i < n; ++i)
            if (den[i] > 0.0) H[i] = num[i] / den[i];
        H = detail::smooth_response(H, cfg.equalizer_window);
        equalize(true);

        for (std::size_t s = 1; s < n_sym; ++s)
            for (auto i : l.data_index) {
                const cplx d = qam.demap(Z[s][i], res.bits);
                err_acc += std::norm(Z[s][i] - d);
                ref_acc += std::norm(d);
                ++res.data_symbols;
            }
    }
    res.evm_rms = ref_acc > 0.0 ? std::sqrt(err_acc / ref_acc) : 0.0;
    return res;
}

}  // namespace rofsim
