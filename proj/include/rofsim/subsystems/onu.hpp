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
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rofsim/channel/photodetector.hpp"
#include "rofsim/photonics/bus.hpp"
#include "rofsim/photonics/filter.hpp"
#include "rofsim/photonics/modulator.hpp"
#include "rofsim/subsystems/olt.hpp"
#include "rofsim/subsystems/smart_edge.hpp"

namespace rofsim {

enum class FilterRole { broadband, rof };

inline const char* to_string(FilterRole r) { return r == FilterRole::broadband ? "broadband" : "rof"; }

/// Half-width of an order-n drop filter centred `distance` from the carrier that drops `fraction` of it.
inline double tap_halfwidth(double distance, double fraction, int order) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ValidationError("carrier tap fraction must lie in (0, 1), got " + num(fraction));
    return std::abs(distance) / std::pow(1.0 / fraction - 1.0, 1.0 / (2.0 * order));
}

/**
 * One ONU drop filter. The signal band is given relative to the carrier. With a
 * carrier_tap the filter is centred on the band and its width solved so that it drops
 * that fraction of the carrier power; otherwise `bandwidth` is used as given.
 */
struct OnuFilter {
    std::string label;
    FilterRole role = FilterRole::rof;
    double band_low = 1e9;
    double band_high = 2e9;
    int order = 4;
    std::optional<double> carrier_tap;
    double bandwidth = 0.0;
    double centre_offset = 0.0;          // used with an explicit bandwidth
    double insertion_loss_db = 0.0;

    double band_centre() const { return 0.5 * (band_low + band_high); }

    RelativeFilter relative() const {
        RelativeFilter f;
        f.order = order;
        f.insertion_loss_db = insertion_loss_db;
        if (carrier_tap) {
            f.centre_offset = band_centre();
            f.bandwidth = 2.0 * tap_halfwidth(band_centre(), *carrier_tap, order);
        } else {
            f.centre_offset = centre_offset;
            f.bandwidth = bandwidth;
        }
        return f;
    }
};

/// IQ ring modulator that writes the uplink onto the residual carrier.
struct OnuUplinkConfig {
    ModulatorRingSpec ring;
    double branch_phase = std::numbers::pi / 2.0;
    Sideband sideband = Sideband::lower;
    double min_residual_carrier_dbm = -30.0;
};

struct OnuConfig {
    double carrier_freq = 193.4e12;
    double slot_width = 50e9;
    std::vector<OnuFilter> filters;  // bus order
    double carrier_tap_fraction = 0.37;
    PdParams pd;
    double bus_stage_loss_db = kDefaultBusStageLossDb;
    OnuUplinkConfig uplink;

    /// Filters with the broadband tap fraction applied to every broadband filter.
    std::vector<OnuFilter> resolved_filters() const {
        auto out = filters;
        for (auto& f : out)
            if (f.role == FilterRole::broadband) f.carrier_tap = carrier_tap_fraction;
        return out;
    }

    void validate() const {
        if (!(carrier_tap_fraction > 0.0 && carrier_tap_fraction < 1.0))
            throw ValidationError("onu: carrier_tap_fraction must lie in (0, 1), got " +
                                  num(carrier_tap_fraction));
        if (filters.empty()) throw ValidationError("onu: at least one drop filter is required");
        for (const auto& f : resolved_filters()) {
            if (f.order < 1) throw ValidationError("onu filter '" + f.label + "': order must be >= 1");
            if (!(f.band_high > f.band_low))
                throw ValidationError("onu filter '" + f.label + "': band_high must exceed band_low");
            const auto r = f.relative();
            if (!(r.bandwidth > 0.0))
                throw ValidationError("onu filter '" + f.label + "': bandwidth must be positive");
            if (std::abs(r.centre_offset) + r.bandwidth / 2.0 > slot_width / 2.0)
                throw ValidationError("onu filter '" + f.label + "': passband " + num(r.bandwidth) +
                                      " Hz at offset " + num(r.centre_offset) +
                                      " Hz leaves the ONU slot");
        }
    }
};

/// Carrier power along the ONU bus (dBm) and what each kind of tap costs.
struct CarrierLedger {
    double input_dbm = 0.0;
    double after_rof_dbm = 0.0;
    double residual_dbm = 0.0;
    double rof_tap_cost_db = 0.0;
    double broadband_tap_cost_db = 0.0;
    double total_cost_db = 0.0;
};

struct DroppedBranch {
    std::string label;
    FilterRole role = FilterRole::rof;
    ComplexWaveform field;
};

struct OnuDropResult {
    std::vector<DroppedBranch> branches;
    ComplexWaveform residual;
    CarrierLedger ledger;
    double downlink_centroid = 0.0;  // of the input, Hz from the carrier
};

inline constexpr double kCentroidGuardHz = 100e6;

inline double carrier_power(const ComplexWaveform& field, double carrier_freq) {
    return tone_power(field, carrier_freq - field.ref_freq);
}

/// Power of the field in [lo, hi] relative to the carrier.
inline double band_power(const PowerSpectrum& ps, double carrier_offset, double lo, double hi) {
    return ps.band(carrier_offset + lo, carrier_offset + hi);
}

/// Power-weighted mean frequency relative to the carrier over +-half_span, skipping +-guard around it.
inline double spectral_centroid(const PowerSpectrum& ps, double carrier_offset, double half_span, double guard) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const double f = ps.frequency(k) - carrier_offset;
        if (std::abs(f) <= guard || std::abs(f) > half_span) continue;
        num += f * ps.power(k);
        den += ps.power(k);
    }
    return den > 0.0 ? num / den : 0.0;
}

/// Throws unless the field holds the ONU's carrier.
inline void require_slot(const ComplexWaveform& field, const OnuConfig& cfg) {
    const double p = carrier_power(field, cfg.carrier_freq);
    if (!(p > 1e-3 * std::max(mean_power(field), 1e-300)))
        throw ToneNotFoundError("onu: slot at " + num(cfg.carrier_freq) + " Hz is not present in the input");
}

/// Runs the field through the drop filters in bus order.
inline OnuDropResult onu_drop(const ComplexWaveform& field, const OnuConfig& cfg) {
    cfg.validate();
    require_valid(field, "onu_drop");
    const double p_in = carrier_power(field, cfg.carrier_freq);
    OnuDropResult out{{}, field, {}, 0.0};
    out.downlink_centroid = spectral_centroid(PowerSpectrum(field), cfg.carrier_freq - field.ref_freq,
                                              cfg.slot_width / 2.0, kCentroidGuardHz);
    const auto filters = cfg.resolved_filters();
    double p_after_rof = p_in;
    bool broadband_seen = false;
    for (const auto& f : filters) {
        auto r = drop_filter(out.residual, f.relative().at(cfg.carrier_freq));
        out.branches.push_back({f.label, f.role, std::move(r.dropped)});
        out.residual = scaled(std::move(r.through), db_to_amplitude(-cfg.bus_stage_loss_db));
        if (f.role == FilterRole::broadband) broadband_seen = true;
        if (!broadband_seen) p_after_rof = carrier_power(out.residual, cfg.carrier_freq);
    }
    const double p_res = carrier_power(out.residual, cfg.carrier_freq);
    auto& l = out.ledger;
    l.input_dbm = watt_to_dbm(std::max(p_in, 1e-300));
    l.after_rof_dbm = watt_to_dbm(std::max(p_after_rof, 1e-300));
    l.residual_dbm = watt_to_dbm(std::max(p_res, 1e-300));
    l.rof_tap_cost_db = l.input_dbm - l.after_rof_dbm;
    l.broadband_tap_cost_db = l.after_rof_dbm - l.residual_dbm;
    l.total_cost_db = l.input_dbm - l.residual_dbm;
    return out;
}

/// A payload expected on one ONU branch.
struct OnuPayload {
    std::string branch;
    PayloadSpec spec;
    std::vector<std::uint8_t> bits;
};

struct PayloadReport {
    std::string name;
    std::string branch;
    BerReport ber;
};

struct OnuReceiveResult {
    std::vector<PayloadReport> payloads;
    ComplexWaveform residual;
    CarrierLedger ledger;
    double downlink_centroid = 0.0;
};

inline const DroppedBranch& find_branch(const OnuDropResult& d, const std::string& label) {
    for (const auto& b : d.branches)
        if (b.label == label) return b;
    throw ValidationError("onu: no drop filter labelled '" + label + "'");
}

/// Drops, direct-detects (with receiver noise) and demodulates every payload.
inline OnuReceiveResult onu_receive(const ComplexWaveform& field, const OnuConfig& cfg,
                                   std::span<const OnuPayload> payloads, const ChunkGrid& g) {
    require_slot(field, cfg);
    auto d = onu_drop(field, cfg);
    OnuReceiveResult out{{}, std::move(d.residual), d.ledger, d.downlink_centroid};
    std::vector<std::pair<std::string, ComplexWaveform>> detected;
    for (std::size_t i = 0; i < d.branches.size(); ++i) {
        PdParams pd = cfg.pd;
        pd.seed = derive_seed(cfg.pd.seed, 0x0a0, i);
        detected.emplace_back(d.branches[i].label, photodetect(d.branches[i].field, pd));
    }
    for (const auto& p : payloads) {
        find_branch(d, p.branch);
        const auto& e = std::find_if(detected.begin(), detected.end(),
                                     [&](const auto& x) { return x.first == p.branch; })->second;
        const auto rx = demodulate_payload_band(p.spec, extract_payload_band(p.spec, e), p.spec.frames_per_chunk(g));
        out.payloads.push_back({p.spec.name, p.branch, ber_evm_metrics(p.bits, rx.bits, rx.evm_rms)});
    }
    return out;
}

struct RemodulationResult {
    ComplexWaveform field;
    double residual_carrier_dbm = 0.0;
    std::optional<double> uplink_to_residual_db;  // nullopt without uplink content
    double uplink_centroid = 0.0;                 // Hz from the carrier
};

/**
 * IQ-modulates the uplink onto the residual carrier. `uplink_drive` is the real
 * electrical uplink; `uplink_bands` are its bands relative to the carrier as they
 * appear optically (negative for the lower sideband). The ratio compares the weakest
 * uplink band with the strongest residual downlink band (the ONU filter bands).
 */
inline RemodulationResult onu_remodulate(const ComplexWaveform& residual, const OnuConfig& cfg,
                                         const ComplexWaveform& uplink_drive,
                                         std::span<const std::pair<double, double>> uplink_bands) {
    cfg.validate();
    const double off = cfg.carrier_freq - residual.ref_freq;
    const double p_c = tone_power(residual, off);
    RemodulationResult out{residual, watt_to_dbm(std::max(p_c, 1e-300)), std::nullopt, 0.0};
    if (out.residual_carrier_dbm < cfg.uplink.min_residual_carrier_dbm)
        throw PowerBudgetError("onu: residual carrier " + num(out.residual_carrier_dbm) +
                               " dBm is below the " + num(cfg.uplink.min_residual_carrier_dbm) +
                               " dBm needed for the uplink");
    IqMrmConfig iq;
    iq.ring_i = cfg.uplink.ring.at(cfg.carrier_freq);
    iq.ring_q = iq.ring_i;
    iq.branch_phase = cfg.uplink.branch_phase;
    iq.sideband = cfg.uplink.sideband;
    out.field = iq_mrm_ssb(residual, iq, uplink_drive, hilbert(uplink_drive));

    const PowerSpectrum after(out.field);
    out.uplink_centroid = spectral_centroid(after, off, cfg.slot_width / 2.0, kCentroidGuardHz);
    if (mean_power(uplink_drive) <= 0.0 || uplink_bands.empty()) return out;
    double up = std::numeric_limits<double>::infinity(), down = 0.0;
    for (const auto& [lo, hi] : uplink_bands) up = std::min(up, band_power(after, off, lo, hi));
    for (const auto& f : cfg.filters) down = std::max(down, band_power(after, off, f.band_low, f.band_high));
    if (up > 0.0 && down > 0.0) out.uplink_to_residual_db = linear_to_db(up / down);
    return out;
}

/// Stopband depth of a filter's through port over a band: the least suppression inside it (dB).
inline double filter_extinction_db(const OnuFilter& f, double lo, double hi, std::size_t points = 201) {
    const auto spec = f.relative().at(0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        worst = std::max(worst, std::norm(drop_filter_response(spec, x).through));
    }
    return -linear_to_db(std::max(worst, 1e-300));
}

/**
 * Drop extinction needed for the uplink to clear the residual downlink by target_db,
 * given both signals' levels relative to the carrier (dB).
 */
inline double required_drop_extinction_db(double target_db, double downlink_to_carrier_db,
                                          double uplink_to_carrier_db) {
    return target_db + downlink_to_carrier_db - uplink_to_carrier_db;
}

}  // namespace rofsim
