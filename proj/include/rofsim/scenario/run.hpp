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
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rofsim/channel/fiber.hpp"
#include "rofsim/channel/photodetector.hpp"
#include "rofsim/scenario/config.hpp"
#include "rofsim/signal/metrics.hpp"

namespace rofsim {

struct WaterfallPoint {
    double rx_power_dbm = 0.0;
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    double ber = 0.0;
    double evm_rms = 0.0;
    std::size_t sync_losses = 0;  // chunks whose preamble was not found
};

struct DownlinkResult {
    std::string name;
    PayloadKind kind = PayloadKind::digital;
    Placement placement = Placement::olt;
    std::string channel;
    std::string onu_filter;
    std::vector<WaterfallPoint> waterfall;
    bool pass_at_top = false;
    bool monotone = true;
};

struct UplinkResult {
    std::string name;
    PayloadKind kind = PayloadKind::digital;
    std::string channel;
    std::string receiver;  // "smart_edge" or "central_office"
    BerReport ber;
};

struct FilterExtinction {
    std::string label;
    double extinction_db = 0.0;  // through-port suppression over the filter's own band
};

struct OnuResult {
    std::string channel;
    double slot_power_dbm = 0.0;  // ONU input, noiseless reference
    CarrierLedger ledger;
    double downlink_centroid_hz = 0.0;
    double uplink_centroid_hz = 0.0;
    double residual_carrier_dbm = 0.0;
    std::optional<double> uplink_to_residual_db;
    double downlink_to_carrier_db = 0.0;
    std::optional<double> uplink_to_carrier_db;
    std::optional<double> required_extinction_db;
    std::vector<FilterExtinction> extinctions;
};

struct PerturbationResult {
    std::string channel;
    double perturbation_db = 0.0;  // digital-band power change through the smart edge, bus loss removed
};

struct SpectrumSeries {
    std::string name;
    std::vector<std::pair<double, double>> rows;  // absolute Hz, dBm/Hz
};

struct MetricsReport {
    std::string name;
    std::uint64_t seed = 0;
    std::size_t bits_per_point = 0;
    std::size_t chunks = 0;
    std::size_t uplink_chunks = 0;
    double fec_threshold = kDefaultFecThreshold;
    std::vector<double> sweep_dbm;
    std::vector<DownlinkResult> downlink;
    std::vector<UplinkResult> uplink;
    std::vector<OnuResult> onus;
    std::vector<PerturbationResult> perturbation;
    std::vector<SpectrumSeries> spectra;
    nlohmann::ordered_json manifest;

    bool downlink_pass() const {
        return std::all_of(downlink.begin(), downlink.end(), [](const auto& d) { return d.pass_at_top; });
    }
    bool monotone() const {
        return std::all_of(downlink.begin(), downlink.end(), [](const auto& d) { return d.monotone; });
    }
};

struct RunOptions {
    bool full = false;
    bool spectra = true;
};

/// Runs fn and rethrows any library failure as a SimulationError tagged with stage.
template <typename F>
auto at_stage(const std::string& stage, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const SimulationError&) {
        throw;
    } catch (const std::exception& e) {
        throw SimulationError(stage, e.what());
    }
}

/// PSD averaged over blocks of about `resolution` Hz, absolute frequency.
inline std::vector<std::pair<double, double>> coarse_psd(const ComplexWaveform& w, double resolution) {
    const PowerSpectrum ps(w);
    const auto rows = ps.sorted();
    const auto m = static_cast<std::size_t>(std::max(1.0, std::round(resolution / ps.bin_width())));
    std::vector<std::pair<double, double>> out;
    out.reserve(rows.size() / m + 1);
    for (std::size_t i = 0; i + m <= rows.size(); i += m) {
        double f = 0.0, p = 0.0;
        for (std::size_t j = i; j < i + m; ++j) {
            f += rows[j].first;
            p += rows[j].second;
        }
        const double bw = static_cast<double>(m) * ps.bin_width();
        out.emplace_back(w.ref_freq + f / static_cast<double>(m), watt_to_dbm(std::max(p / bw, 1e-300)));
    }
    return out;
}

/**
 * A payload band after detection: y = a2 * band0 + n, n white over the receive filter
 * with the shot plus thermal PSD of mean photocurrent a2 * mean_current.
 */
inline ComplexWaveform noisy_band(const PayloadSpec& p, const ComplexWaveform& band0, double a2,
                                  double mean_current, const PdParams& pd, std::uint64_t seed) {
    ComplexWaveform y = scaled(band0, a2);
    Rng rng(seed);
    add_complex_noise(y.samples, band_noise_variance(receiver_noise_psd(pd, a2 * mean_current), y.sample_rate), rng);
    const double c = p.ofdm.band_centre_offset();
    const double half = p.ofdm.occupied_bandwidth / 2.0 + p.ofdm.subcarrier_spacing();
    return bandpass(y, c - half, c + half);
}

/// Demodulates one chunk; a lost preamble counts every bit as a coin flip.
inline BerReport detect_chunk(const PayloadSpec& p, const ComplexWaveform& band, std::span<const std::uint8_t> bits,
                              const ChunkGrid& g, bool& sync_lost) {
    sync_lost = false;
    try {
        const auto rx = demodulate_payload_band(p, band, p.frames_per_chunk(g));
        return ber_evm_metrics(bits, rx.bits, rx.evm_rms);
    } catch (const SynchronizationError&) {
        sync_lost = true;
        return make_ber_report(bits.size() / 2, bits.size(), 1.0);
    }
}

/// Non-increasing BER with power, allowing 3 sigma of Monte-Carlo jitter.
inline bool waterfall_monotone(const std::vector<WaterfallPoint>& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        const auto& a = w[i - 1];
        const auto& b = w[i];
        if (a.bits == 0 || b.bits == 0) continue;
        const double floor = std::max(a.ber, 1.0 / static_cast<double>(a.bits));
        const double tol = 3.0 * std::sqrt(floor / static_cast<double>(std::min(a.bits, b.bits)));
        if (b.ber > a.ber + tol) return false;
    }
    return true;
}

namespace detail {

struct Accum {
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    double evm_sq = 0.0;
    std::size_t chunks = 0;
    std::size_t sync_losses = 0;

    void add(const BerReport& r, bool lost) {
        errors += r.bit_errors;
        bits += r.total_bits;
        evm_sq += r.evm_rms * r.evm_rms;
        ++chunks;
        sync_losses += lost ? 1 : 0;
    }
    double evm() const { return chunks ? std::sqrt(evm_sq / static_cast<double>(chunks)) : 0.0; }
};

inline double mean_real(const ComplexWaveform& w) {
    double s = 0.0;
    for (const auto& v : w.samples) s += v.real();
    return w.empty() ? 0.0 : s / static_cast<double>(w.size());
}

inline std::vector<std::uint8_t> chunk_bits(const ScenarioConfig& c, std::size_t payload, std::size_t chunk) {
    return random_bits(c.payloads[payload].spec.bits_per_chunk(c.grid), derive_seed(c.seed, 0x100 + payload, chunk));
}

}  // namespace detail

/**
 * End-to-end run. Each chunk goes OLT, feeder, smart edge, distribution and ONU drop
 * once without noise; every sweep point then rescales the received slot power and adds
 * receiver noise in the payload band. The first uplink_chunks chunks also run the
 * uplink: ONU remodulation, distribution, smart-edge intercept, feeder and the
 * central-office receiver.
 */
inline MetricsReport run_scenario(const ScenarioConfig& cfg, const RunOptions& opt = {}) {
    at_stage("config", [&] { cfg.validate(); });
    const auto& g = cfg.grid;
    const auto& plan = cfg.plan;
    const std::size_t n_ch = plan.channels.size();
    const std::size_t n_pts = cfg.sweep.points.size();
    const std::size_t target_bits = opt.full ? std::max(cfg.full_bits_per_point, cfg.bits_per_point) : cfg.bits_per_point;

    MetricsReport rep;
    rep.name = cfg.name;
    rep.seed = cfg.seed;
    rep.bits_per_point = target_bits;
    rep.sweep_dbm = cfg.sweep.points;
    rep.manifest = to_json(cfg);

    std::vector<std::size_t> down, up;
    for (std::size_t i = 0; i < cfg.payloads.size(); ++i)
        (cfg.payloads[i].direction == Direction::downlink ? down : up).push_back(i);
    std::size_t chunks = 1;
    for (auto i : down)
        chunks = std::max(chunks, (target_bits + cfg.payloads[i].spec.bits_per_chunk(g) - 1) /
                                      cfg.payloads[i].spec.bits_per_chunk(g));
    rep.chunks = chunks;
    rep.uplink_chunks = up.empty() ? 0 : std::min(cfg.uplink_chunks, chunks);

    std::vector<std::size_t> onu_of(plan.channels.size(), SIZE_MAX);
    for (std::size_t o = 0; o < cfg.onus.size(); ++o) onu_of[plan.index_of(cfg.onus[o].channel)] = o;

    std::vector<std::vector<detail::Accum>> acc(cfg.payloads.size(), std::vector<detail::Accum>(n_pts));
    std::vector<detail::Accum> up_acc(cfg.payloads.size());
    std::vector<double> slot_ref(cfg.onus.size(), 0.0);
    rep.onus.resize(cfg.onus.size());
    const double edge_loss_db = 3.0 * cfg.edge.bus_stage_loss_db * static_cast<double>(n_ch);

    for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
        std::map<std::size_t, std::vector<std::uint8_t>> bits;
        for (std::size_t i = 0; i < cfg.payloads.size(); ++i) bits[i] = detail::chunk_bits(cfg, i, chunk);

        const auto olt_out = at_stage("olt", [&] {
            std::vector<std::optional<IqDrive>> drives(n_ch);
            std::vector<std::optional<ComplexWaveform>> sum(n_ch);
            for (auto i : down) {
                const auto& p = cfg.payloads[i];
                if (p.placement != Placement::olt) continue;
                auto d = make_drive(p.spec, bits[i], g);
                auto& s = sum[plan.index_of(p.channel)];
                s = s ? add(*s, d) : d;
            }
            for (std::size_t k = 0; k < n_ch; ++k)
                if (sum[k]) drives[k] = make_iq_drive(*sum[k]);
            const auto comb = carrier_field(plan, dbm_to_watt(cfg.olt.power_per_tone_dbm), cfg.olt.linewidth,
                                            derive_seed(cfg.olt.seed, chunk), g);
            return olt_modulate(comb, plan, cfg.olt, drives);
        });
        const auto feeder_out = at_stage("feeder", [&] { return propagate_fiber(olt_out, cfg.feeder); });
        const auto edge_out = at_stage("smart_edge", [&] {
            std::vector<TunnelDrives> drives(n_ch);
            for (auto i : down) {
                const auto& p = cfg.payloads[i];
                if (p.placement != Placement::tunnel_upper && p.placement != Placement::tunnel_lower) continue;
                drives[plan.index_of(p.channel)][p.placement == Placement::tunnel_upper ? 0 : 1] =
                    make_drive(p.spec, bits[i], g);
            }
            return smart_edge_overlay(feeder_out, plan, cfg.edge, drives, g);
        });
        const auto onu_in = at_stage("distribution", [&] { return propagate_fiber(edge_out, cfg.distribution); });

        if (chunk == 0) {
            const PowerSpectrum before(feeder_out), after(edge_out);
            for (auto i : down) {
                const auto& p = cfg.payloads[i];
                if (p.placement != Placement::olt || p.spec.kind != PayloadKind::digital) continue;
                const double off = plan.channels[plan.index_of(p.channel)].center_freq - feeder_out.ref_freq;
                const double b = before.band(off + p.spec.band_low(), off + p.spec.band_high());
                const double a = after.band(off + p.spec.band_low(), off + p.spec.band_high());
                rep.perturbation.push_back({p.channel, linear_to_db(a / b) + edge_loss_db});
            }
            if (opt.spectra) {
                rep.spectra.push_back({"olt_out", coarse_psd(olt_out, cfg.spectrum_resolution_hz)});
                rep.spectra.push_back({"onu_in", coarse_psd(onu_in, cfg.spectrum_resolution_hz)});
            }
        }

        const bool do_uplink = chunk < rep.uplink_chunks;
        std::optional<ComplexWaveform> upstream;
        for (std::size_t o = 0; o < cfg.onus.size(); ++o) {
            const auto& onu = cfg.onus[o].cfg;
            const auto& ch = plan.channels[plan.index_of(cfg.onus[o].channel)];
            const double off = ch.center_freq - onu_in.ref_freq;
            const auto d = at_stage("onu", [&] {
                require_slot(onu_in, onu);
                return onu_drop(onu_in, onu);
            });
            if (chunk == 0) {
                const PowerSpectrum ps(onu_in);
                slot_ref[o] = ps.band(off - ch.slot_width / 2.0, off + ch.slot_width / 2.0);
                auto& r = rep.onus[o];
                r.channel = ch.id;
                r.slot_power_dbm = watt_to_dbm(slot_ref[o]);
                r.ledger = d.ledger;
                r.downlink_centroid_hz = d.downlink_centroid;
                const double pc = carrier_power(onu_in, ch.center_freq);
                double dl = 0.0;
                for (const auto& f : onu.resolved_filters()) {
                    dl = std::max(dl, band_power(ps, off, f.band_low, f.band_high));
                    r.extinctions.push_back({f.label, filter_extinction_db(f, f.band_low, f.band_high)});
                }
                r.downlink_to_carrier_db = linear_to_db(std::max(dl, 1e-300) / pc);
            }
            for (auto i : down) {
                const auto& p = cfg.payloads[i];
                if (p.channel != ch.id) continue;
                at_stage("onu_receive", [&] {
                    const auto e = photodetect_noiseless(find_branch(d, p.onu_filter).field, onu.pd.responsivity);
                    const double ibar = detail::mean_real(e);
                    const auto band0 = extract_payload_band(p.spec, e);
                    for (std::size_t k = 0; k < n_pts; ++k) {
                        const double a2 = dbm_to_watt(cfg.sweep.points[k]) / slot_ref[o];
                        const auto y = noisy_band(p.spec, band0, a2, ibar, onu.pd,
                                                  derive_seed(onu.pd.seed, 0x200 + i, chunk * n_pts + k));
                        bool lost = false;
                        acc[i][k].add(detect_chunk(p.spec, y, bits[i], g, lost), lost);
                    }
                });
            }
            if (!do_uplink) continue;

            const auto rm = at_stage("onu_remodulate", [&] {
                ComplexWaveform drive(std::vector<cplx>(g.samples), g.sample_rate, 0.0);
                std::vector<std::pair<double, double>> bands;
                for (auto i : up) {
                    const auto& p = cfg.payloads[i];
                    if (p.channel != ch.id) continue;
                    drive = add(drive, make_drive(p.spec, bits[i], g));
                    if (onu.uplink.sideband == Sideband::lower)
                        bands.emplace_back(-p.spec.band_high(), -p.spec.band_low());
                    else
                        bands.emplace_back(p.spec.band_low(), p.spec.band_high());
                }
                auto r = onu_remodulate(d.residual, onu, drive, bands);
                if (chunk == 0) {
                    auto& s = rep.onus[o];
                    s.residual_carrier_dbm = r.residual_carrier_dbm;
                    s.uplink_to_residual_db = r.uplink_to_residual_db;
                    s.uplink_centroid_hz = r.uplink_centroid;
                    if (!bands.empty()) {
                        const PowerSpectrum ps(r.field);
                        double u = std::numeric_limits<double>::infinity();
                        for (const auto& [lo, hi] : bands) u = std::min(u, band_power(ps, off, lo, hi));
                        s.uplink_to_carrier_db = linear_to_db(u / ps.tone(off, 0));
                        s.required_extinction_db =
                            required_drop_extinction_db(13.0, s.downlink_to_carrier_db, *s.uplink_to_carrier_db);
                    }
                }
                // Only the ONU's own slot goes upstream.
                return bandpass(r.field, off - ch.slot_width / 2.0, off + ch.slot_width / 2.0);
            });
            upstream = upstream ? add(*upstream, rm) : rm;
        }
        if (!do_uplink || !upstream) continue;

        auto field = at_stage("distribution_up", [&] { return propagate_fiber(*upstream, cfg.distribution); });
        for (std::size_t k = 0; k < n_ch; ++k) {
            std::vector<std::size_t> rof;
            for (auto i : up)
                if (cfg.payloads[i].spec.kind == PayloadKind::rof && cfg.payloads[i].channel == plan.channels[k].id)
                    rof.push_back(i);
            if (rof.empty()) continue;
            at_stage("smart_edge_intercept", [&] {
                auto r = smart_edge_intercept_uplink(field, plan, cfg.edge, k);
                const double ibar = detail::mean_real(r.electrical);
                for (auto i : rof) {
                    const auto& p = cfg.payloads[i];
                    const auto y = noisy_band(p.spec, extract_payload_band(p.spec, r.electrical), 1.0, ibar,
                                              cfg.edge.intercept_pd, derive_seed(cfg.edge.intercept_pd.seed, i, chunk));
                    bool lost = false;
                    up_acc[i].add(detect_chunk(p.spec, y, bits[i], g, lost), lost);
                }
                field = std::move(r.through);
            });
        }
        const auto co_in = at_stage("feeder_up", [&] { return propagate_fiber(field, cfg.feeder); });
        if (chunk == 0 && opt.spectra) rep.spectra.push_back({"co_uplink_in", coarse_psd(co_in, cfg.spectrum_resolution_hz)});
        at_stage("central_office", [&] {
            for (std::size_t k = 0; k < n_ch; ++k) {
                const auto& ch = plan.channels[k];
                std::vector<std::size_t> dig;
                for (auto i : up)
                    if (cfg.payloads[i].spec.kind == PayloadKind::digital && cfg.payloads[i].channel == ch.id)
                        dig.push_back(i);
                if (dig.empty()) continue;
                const auto dr = drop_filter(co_in, DropFilterSpec{ch.center_freq, ch.slot_width, cfg.co_filter_order, 0.0});
                const auto e = photodetect_noiseless(dr.dropped, cfg.co_pd.responsivity);
                const double ibar = detail::mean_real(e);
                for (auto i : dig) {
                    const auto& p = cfg.payloads[i];
                    const auto y = noisy_band(p.spec, extract_payload_band(p.spec, e), 1.0, ibar, cfg.co_pd,
                                              derive_seed(cfg.co_pd.seed, i, chunk));
                    bool lost = false;
                    up_acc[i].add(detect_chunk(p.spec, y, bits[i], g, lost), lost);
                }
            }
        });
    }

    for (auto i : down) {
        const auto& p = cfg.payloads[i];
        DownlinkResult r{p.spec.name, p.spec.kind, p.placement, p.channel, p.onu_filter, {}, false, true};
        for (std::size_t k = 0; k < n_pts; ++k) {
            const auto& a = acc[i][k];
            r.waterfall.push_back({cfg.sweep.points[k], a.errors, a.bits,
                                   a.bits ? static_cast<double>(a.errors) / static_cast<double>(a.bits) : 0.0,
                                   a.evm(), a.sync_losses});
        }
        if (!r.waterfall.empty()) {
            const auto top = std::max_element(r.waterfall.begin(), r.waterfall.end(),
                                              [](const auto& a, const auto& b) { return a.rx_power_dbm < b.rx_power_dbm; });
            r.pass_at_top = top->ber < rep.fec_threshold;
        }
        r.monotone = waterfall_monotone(r.waterfall);
        rep.downlink.push_back(std::move(r));
    }
    for (auto i : up) {
        const auto& p = cfg.payloads[i];
        const auto& a = up_acc[i];
        rep.uplink.push_back({p.spec.name, p.spec.kind, p.channel,
                              p.spec.kind == PayloadKind::rof ? "smart_edge" : "central_office",
                              make_ber_report(a.errors, a.bits, a.evm())});
    }
    return rep;
}

}  // namespace rofsim
