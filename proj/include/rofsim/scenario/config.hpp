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
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "rofsim/channel/fiber.hpp"
#include "rofsim/core/yaml.hpp"
#include "rofsim/subsystems/olt.hpp"
#include "rofsim/subsystems/onu.hpp"
#include "rofsim/subsystems/smart_edge.hpp"

namespace rofsim {

enum class Direction { downlink, uplink };

/// Where a payload is written onto light.
enum class Placement {
    olt,           // IQ drive of the channel's OLT modulator
    tunnel_upper,  // smart-edge MRM-2 on the +f_s subcarrier
    tunnel_lower,  // smart-edge MRM-3 on the -f_s subcarrier
    onu            // ONU uplink IQ modulator
};

inline const char* to_string(Direction d) { return d == Direction::downlink ? "downlink" : "uplink"; }

inline const char* to_string(Placement p) {
    switch (p) {
        case Placement::olt: return "olt";
        case Placement::tunnel_upper: return "tunnel_upper";
        case Placement::tunnel_lower: return "tunnel_lower";
        case Placement::onu: return "onu";
    }
    return "?";
}

struct PayloadConfig {
    PayloadSpec spec;             // center_hz snapped so subcarrier 0 is on the chunk grid
    std::string profile;
    Direction direction = Direction::downlink;
    Placement placement = Placement::olt;
    std::string channel;
    std::string onu_filter;       // downlink: ONU branch that detects it
};

struct OnuEntry {
    std::string channel;
    OnuConfig cfg;                // carrier_freq and slot taken from the channel
};

struct SweepConfig {
    std::string axis = "received_power_dbm";
    std::vector<double> points;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::uint64_t seed = 0;
    ChunkGrid grid;
    std::size_t bits_per_point = 2'000'000;
    std::size_t full_bits_per_point = 10'000'000;
    std::size_t uplink_chunks = 4;
    WdmPlan plan;
    OltConfig olt;
    SmartEdgeConfig edge;
    FiberParams feeder;
    FiberParams distribution;
    std::map<std::string, OfdmConfig> profiles;
    std::vector<PayloadConfig> payloads;
    std::vector<OnuEntry> onus;
    PdParams co_pd;
    int co_filter_order = 4;
    SweepConfig sweep;
    double spectrum_resolution_hz = 50e6;
    std::string output_dir = "out";

    const OnuEntry* onu_for(const std::string& channel) const {
        for (const auto& o : onus)
            if (o.channel == channel) return &o;
        return nullptr;
    }

    void validate() const;
};

namespace detail {

inline ModulatorRingSpec parse_ring(const YAML::Node& y, ModulatorRingSpec r, const std::string& ctx) {
    if (!y) return r;
    yaml::check_keys(y, {"fwhm_hz", "fsr_hz", "mod_efficiency_hz_per_v", "bias_detuning_hz"}, ctx);
    r.fwhm = yaml::get(y, "fwhm_hz", r.fwhm, ctx);
    r.fsr = yaml::get(y, "fsr_hz", r.fsr, ctx);
    r.mod_efficiency = yaml::get(y, "mod_efficiency_hz_per_v", r.mod_efficiency, ctx);
    r.bias_detuning = yaml::get(y, "bias_detuning_hz", r.bias_detuning, ctx);
    return r;
}

inline PdParams parse_pd(const YAML::Node& y, PdParams p, const std::string& ctx) {
    if (!y) return p;
    yaml::check_keys(y, {"responsivity_a_per_w", "thermal_noise_psd_a2_per_hz", "include_shot"}, ctx);
    p.responsivity = yaml::get(y, "responsivity_a_per_w", p.responsivity, ctx);
    p.thermal_noise_psd = yaml::get(y, "thermal_noise_psd_a2_per_hz", p.thermal_noise_psd, ctx);
    p.include_shot = yaml::get(y, "include_shot", p.include_shot, ctx);
    return p;
}

inline FiberParams parse_fiber(const YAML::Node& y, FiberParams f, const std::string& ctx) {
    if (!y) return f;
    yaml::check_keys(y, {"length_km", "atten_db_per_km", "dispersion_ps_nm_km", "group_delay_us_per_km",
                         "ref_wavelength_nm"}, ctx);
    f.length_km = yaml::get(y, "length_km", f.length_km, ctx);
    f.atten_db_per_km = yaml::get(y, "atten_db_per_km", f.atten_db_per_km, ctx);
    f.dispersion_ps_nm_km = yaml::get(y, "dispersion_ps_nm_km", f.dispersion_ps_nm_km, ctx);
    f.group_delay_us_per_km = yaml::get(y, "group_delay_us_per_km", f.group_delay_us_per_km, ctx);
    f.ref_wavelength_nm = yaml::get(y, "ref_wavelength_nm", f.ref_wavelength_nm, ctx);
    try {
        f.validate();
    } catch (const InvalidArgument& e) {
        throw ValidationError(ctx + ": " + e.what());
    }
    return f;
}

inline OfdmConfig parse_ofdm(const YAML::Node& y, const std::string& ctx) {
    yaml::check_keys(y, {"n_subcarriers", "qam_order", "cp_fraction", "occupied_bandwidth_hz", "pilot_spacing",
                         "seed", "data_symbols_per_frame", "equalizer_window"}, ctx);
    OfdmConfig c;
    c.n_subcarriers = yaml::require<std::size_t>(y, "n_subcarriers", ctx);
    c.qam_order = yaml::require<int>(y, "qam_order", ctx);
    c.occupied_bandwidth = yaml::require<double>(y, "occupied_bandwidth_hz", ctx);
    c.cp_fraction = yaml::get(y, "cp_fraction", c.cp_fraction, ctx);
    c.pilot_spacing = yaml::get(y, "pilot_spacing", c.pilot_spacing, ctx);
    c.seed = yaml::get(y, "seed", c.seed, ctx);
    c.data_symbols_per_frame = yaml::get(y, "data_symbols_per_frame", c.data_symbols_per_frame, ctx);
    c.equalizer_window = yaml::get(y, "equalizer_window", c.equalizer_window, ctx);
    try {
        c.validate();
    } catch (const InvalidArgument& e) {
        throw ValidationError(ctx + ": " + e.what());
    }
    return c;
}

inline Sideband parse_sideband(const std::string& s, const std::string& ctx) {
    if (s == "upper") return Sideband::upper;
    if (s == "lower") return Sideband::lower;
    throw ValidationError(ctx + ": sideband must be upper or lower, got '" + s + "'");
}

inline double deg(double d) { return d * std::numbers::pi / 180.0; }

/// Moves `center` so that subcarrier 0 lands on the nearest grid bin.
inline double snap_center(double center, const OfdmConfig& c, const ChunkGrid& g) {
    const double carrier = center - c.band_centre_offset();
    return std::round(carrier / g.bin_width()) * g.bin_width() + c.band_centre_offset();
}

}  // namespace detail

/**
 * Scenario from a parsed YAML document. Required sections: seed, grid, wdm, profiles,
 * payloads, onus, sweep. Every other field falls back to a documented default.
 */
inline ScenarioConfig parse_scenario(const YAML::Node& root, const std::string& ctx = "config") {
    if (!root || root.IsNull() || (root.IsMap() && root.size() == 0))
        throw ValidationError(ctx + ": empty configuration; missing sections: seed, grid, wdm, profiles, payloads, onus, sweep");
    yaml::check_keys(root, {"name", "seed", "grid", "bits_per_point", "full_bits_per_point", "uplink_chunks", "wdm",
                            "olt", "smart_edge", "fiber", "profiles", "payloads", "onus", "central_office", "sweep",
                            "output"}, ctx);
    std::vector<std::string> missing;
    for (const char* s : {"seed", "grid", "wdm", "profiles", "payloads", "onus", "sweep"})
        if (!root[s]) missing.push_back(s);
    if (!missing.empty()) {
        std::string m;
        for (const auto& s : missing) m += (m.empty() ? "" : ", ") + s;
        throw ValidationError(ctx + ": missing sections: " + m);
    }
    using namespace detail;
    ScenarioConfig c;
    c.name = yaml::get<std::string>(root, "name", c.name, ctx);
    c.seed = yaml::require<std::uint64_t>(root, "seed", ctx);
    {
        const auto g = root["grid"];
        yaml::check_keys(g, {"sample_rate_hz", "samples"}, ctx + ".grid");
        c.grid.sample_rate = yaml::get(g, "sample_rate_hz", c.grid.sample_rate, ctx + ".grid");
        c.grid.samples = yaml::get(g, "samples", c.grid.samples, ctx + ".grid");
        if (!(c.grid.sample_rate > 0.0) || c.grid.samples < 1024 || !std::has_single_bit(c.grid.samples))
            throw ValidationError(ctx + ".grid: need a positive sample rate and a power-of-two sample count >= 1024");
    }
    c.bits_per_point = yaml::get(root, "bits_per_point", c.bits_per_point, ctx);
    c.full_bits_per_point = yaml::get(root, "full_bits_per_point", c.full_bits_per_point, ctx);
    c.uplink_chunks = yaml::get(root, "uplink_chunks", c.uplink_chunks, ctx);

    for (const auto& y : root["wdm"]["channels"]) {
        const std::string cc = ctx + ".wdm.channels";
        yaml::check_keys(y, {"id", "center_freq_hz", "slot_width_hz", "digital_subband_hz", "rof_offset_hz"}, cc);
        WdmChannel ch;
        ch.id = yaml::require<std::string>(y, "id", cc);
        ch.center_freq = yaml::require<double>(y, "center_freq_hz", cc + "[" + ch.id + "]");
        ch.slot_width = yaml::get(y, "slot_width_hz", ch.slot_width, cc);
        ch.digital_subband = yaml::get(y, "digital_subband_hz", ch.digital_subband, cc);
        ch.rof_offset = yaml::get(y, "rof_offset_hz", ch.rof_offset, cc);
        c.plan.channels.push_back(ch);
    }

    if (const auto o = root["olt"]) {
        const std::string oc = ctx + ".olt";
        yaml::check_keys(o, {"power_per_tone_dbm", "linewidth_hz", "ring", "branch_phase_deg", "sideband",
                             "bus_stage_loss_db", "seed"}, oc);
        c.olt.power_per_tone_dbm = yaml::get(o, "power_per_tone_dbm", c.olt.power_per_tone_dbm, oc);
        c.olt.linewidth = yaml::get(o, "linewidth_hz", c.olt.linewidth, oc);
        c.olt.ring = parse_ring(o["ring"], c.olt.ring, oc + ".ring");
        c.olt.branch_phase = deg(yaml::get(o, "branch_phase_deg", 90.0, oc));
        c.olt.sideband = parse_sideband(yaml::get<std::string>(o, "sideband", "upper", oc), oc);
        c.olt.bus_stage_loss_db = yaml::get(o, "bus_stage_loss_db", c.olt.bus_stage_loss_db, oc);
    }
    c.olt.seed = derive_seed(c.seed, 0x01);

    if (const auto e = root["smart_edge"]) {
        const std::string ec = ctx + ".smart_edge";
        yaml::check_keys(e, {"clock_ring", "clock_amplitude_volt", "tunnel_ring", "bus_stage_loss_db", "intercept",
                             "intercept_pd"}, ec);
        c.edge.clock_ring = parse_ring(e["clock_ring"], c.edge.clock_ring, ec + ".clock_ring");
        c.edge.clock_amplitude_volt = yaml::get(e, "clock_amplitude_volt", c.edge.clock_amplitude_volt, ec);
        c.edge.tunnel_ring = parse_ring(e["tunnel_ring"], c.edge.tunnel_ring, ec + ".tunnel_ring");
        c.edge.bus_stage_loss_db = yaml::get(e, "bus_stage_loss_db", c.edge.bus_stage_loss_db, ec);
        if (const auto i = e["intercept"]) {
            yaml::check_keys(i, {"centre_offset_hz", "bandwidth_hz", "order"}, ec + ".intercept");
            c.edge.intercept.centre_offset = yaml::get(i, "centre_offset_hz", c.edge.intercept.centre_offset, ec);
            c.edge.intercept.bandwidth = yaml::get(i, "bandwidth_hz", c.edge.intercept.bandwidth, ec);
            c.edge.intercept.order = yaml::get(i, "order", c.edge.intercept.order, ec);
        }
        c.edge.intercept_pd = parse_pd(e["intercept_pd"], c.edge.intercept_pd, ec + ".intercept_pd");
    }
    c.edge.intercept_pd.seed = derive_seed(c.seed, 0x02);

    if (const auto f = root["fiber"]) {
        yaml::check_keys(f, {"feeder", "distribution"}, ctx + ".fiber");
        c.feeder = parse_fiber(f["feeder"], c.feeder, ctx + ".fiber.feeder");
        c.distribution = parse_fiber(f["distribution"], c.distribution, ctx + ".fiber.distribution");
    }

    for (const auto& kv : root["profiles"]) {
        const auto key = kv.first.as<std::string>();
        c.profiles[key] = parse_ofdm(kv.second, ctx + ".profiles." + key);
    }

    for (const auto& y : root["payloads"]) {
        const std::string pc = ctx + ".payloads";
        yaml::check_keys(y, {"name", "kind", "direction", "placement", "channel", "profile", "center_hz",
                             "drive_rms_volt", "onu_filter"}, pc);
        PayloadConfig p;
        p.spec.name = yaml::require<std::string>(y, "name", pc);
        const std::string nc = pc + "[" + p.spec.name + "]";
        const auto kind = yaml::require<std::string>(y, "kind", nc);
        if (kind != "digital" && kind != "rof") throw ValidationError(nc + ".kind: expected digital or rof");
        p.spec.kind = kind == "digital" ? PayloadKind::digital : PayloadKind::rof;
        const auto dir = yaml::get<std::string>(y, "direction", "downlink", nc);
        if (dir != "downlink" && dir != "uplink") throw ValidationError(nc + ".direction: expected downlink or uplink");
        p.direction = dir == "downlink" ? Direction::downlink : Direction::uplink;
        const auto pl = yaml::get<std::string>(y, "placement", p.direction == Direction::uplink ? "onu" : "olt", nc);
        bool found = false;
        for (auto v : {Placement::olt, Placement::tunnel_upper, Placement::tunnel_lower, Placement::onu})
            if (pl == to_string(v)) p.placement = v, found = true;
        if (!found) throw ValidationError(nc + ".placement: unknown placement '" + pl + "'");
        p.channel = yaml::require<std::string>(y, "channel", nc);
        p.profile = yaml::require<std::string>(y, "profile", nc);
        const auto it = c.profiles.find(p.profile);
        if (it == c.profiles.end()) throw ValidationError(nc + ".profile: no profile named '" + p.profile + "'");
        p.spec.ofdm = it->second;
        p.spec.center_hz = snap_center(yaml::require<double>(y, "center_hz", nc), p.spec.ofdm, c.grid);
        p.spec.drive_rms_volt = yaml::get(y, "drive_rms_volt", p.spec.drive_rms_volt, nc);
        p.onu_filter = yaml::get<std::string>(y, "onu_filter", "", nc);
        c.payloads.push_back(p);
    }

    for (const auto& y : root["onus"]) {
        const std::string oc = ctx + ".onus";
        yaml::check_keys(y, {"channel", "filters", "carrier_tap_fraction", "pd", "bus_stage_loss_db", "uplink"}, oc);
        OnuEntry o;
        o.channel = yaml::require<std::string>(y, "channel", oc);
        const std::string nc = oc + "[" + o.channel + "]";
        o.cfg.carrier_tap_fraction = yaml::get(y, "carrier_tap_fraction", o.cfg.carrier_tap_fraction, nc);
        o.cfg.pd = parse_pd(y["pd"], o.cfg.pd, nc + ".pd");
        o.cfg.bus_stage_loss_db = yaml::get(y, "bus_stage_loss_db", o.cfg.bus_stage_loss_db, nc);
        for (const auto& fy : y["filters"]) {
            const std::string fc = nc + ".filters";
            yaml::check_keys(fy, {"label", "role", "band_low_hz", "band_high_hz", "order", "carrier_tap",
                                  "bandwidth_hz", "centre_offset_hz", "insertion_loss_db"}, fc);
            OnuFilter f;
            f.label = yaml::require<std::string>(fy, "label", fc);
            const auto role = yaml::require<std::string>(fy, "role", fc);
            if (role != "broadband" && role != "rof") throw ValidationError(fc + ".role: expected broadband or rof");
            f.role = role == "broadband" ? FilterRole::broadband : FilterRole::rof;
            f.band_low = yaml::require<double>(fy, "band_low_hz", fc);
            f.band_high = yaml::require<double>(fy, "band_high_hz", fc);
            f.order = yaml::get(fy, "order", f.order, fc);
            f.carrier_tap = yaml::optional<double>(fy, "carrier_tap", fc);
            f.bandwidth = yaml::get(fy, "bandwidth_hz", f.bandwidth, fc);
            f.centre_offset = yaml::get(fy, "centre_offset_hz", f.band_centre(), fc);
            f.insertion_loss_db = yaml::get(fy, "insertion_loss_db", f.insertion_loss_db, fc);
            o.cfg.filters.push_back(f);
        }
        if (const auto u = y["uplink"]) {
            const std::string uc = nc + ".uplink";
            yaml::check_keys(u, {"ring", "branch_phase_deg", "sideband", "min_residual_carrier_dbm"}, uc);
            o.cfg.uplink.ring = parse_ring(u["ring"], o.cfg.uplink.ring, uc + ".ring");
            o.cfg.uplink.branch_phase = deg(yaml::get(u, "branch_phase_deg", 90.0, uc));
            o.cfg.uplink.sideband = parse_sideband(yaml::get<std::string>(u, "sideband", "lower", uc), uc);
            o.cfg.uplink.min_residual_carrier_dbm =
                yaml::get(u, "min_residual_carrier_dbm", o.cfg.uplink.min_residual_carrier_dbm, uc);
        }
        o.cfg.pd.seed = derive_seed(c.seed, 0x04, c.onus.size());
        c.onus.push_back(o);
    }

    if (const auto co = root["central_office"]) {
        yaml::check_keys(co, {"pd", "filter_order"}, ctx + ".central_office");
        c.co_pd = parse_pd(co["pd"], c.co_pd, ctx + ".central_office.pd");
        c.co_filter_order = yaml::get(co, "filter_order", c.co_filter_order, ctx + ".central_office");
    }
    c.co_pd.seed = derive_seed(c.seed, 0x03);

    {
        const auto s = root["sweep"];
        const std::string sc = ctx + ".sweep";
        yaml::check_keys(s, {"axis", "start", "stop", "step", "points"}, sc);
        c.sweep.axis = yaml::get<std::string>(s, "axis", c.sweep.axis, sc);
        if (const auto pts = s["points"]) {
            c.sweep.points = yaml::as<std::vector<double>>(pts, sc + ".points");
        } else {
            const double a = yaml::require<double>(s, "start", sc), b = yaml::require<double>(s, "stop", sc),
                         st = yaml::require<double>(s, "step", sc);
            if (!(st > 0.0) || b < a) throw ValidationError(sc + ": need step > 0 and stop >= start");
            for (int i = 0; a + i * st <= b + 1e-9 * st; ++i) c.sweep.points.push_back(a + i * st);
        }
        std::sort(c.sweep.points.begin(), c.sweep.points.end());
    }
    if (const auto o = root["output"]) {
        yaml::check_keys(o, {"dir", "spectrum_resolution_hz"}, ctx + ".output");
        c.output_dir = yaml::get<std::string>(o, "dir", c.output_dir, ctx + ".output");
        c.spectrum_resolution_hz = yaml::get(o, "spectrum_resolution_hz", c.spectrum_resolution_hz, ctx + ".output");
    }
    for (auto& o : c.onus)
        for (const auto& ch : c.plan.channels)
            if (ch.id == o.channel) {
                o.cfg.carrier_freq = ch.center_freq;
                o.cfg.slot_width = ch.slot_width;
            }
    c.validate();
    return c;
}

inline ScenarioConfig load_config(const std::string& path) { return parse_scenario(yaml::load_file(path), path); }

inline void ScenarioConfig::validate() const {
    plan.validate();
    if (sweep.axis != "received_power_dbm")
        throw ValidationError("sweep: unsupported axis '" + sweep.axis + "' (only received_power_dbm)");
    if (!std::is_sorted(sweep.points.begin(), sweep.points.end()))
        throw ValidationError("sweep: points must be in ascending order");
    if (bits_per_point == 0) throw ValidationError("bits_per_point must be positive");
    for (const auto& ch : plan.channels) {
        const double off = ch.center_freq - plan.reference_freq();
        if (std::abs(off) + ch.slot_width / 2.0 > grid.sample_rate / 2.0)
            throw ValidationError("wdm channel '" + ch.id + "': slot reaches " + num(std::abs(off) + ch.slot_width / 2.0) +
                                  " Hz from the reference, beyond the grid's +-" + num(grid.sample_rate / 2.0) + " Hz");
    }
    for (const auto& o : onus) {
        plan.index_of(o.channel);
        try {
            o.cfg.validate();
        } catch (const ValidationError& e) {
            throw ValidationError("onu for channel '" + o.channel + "': " + e.what());
        }
    }
    std::map<std::string, int> names;
    for (const auto& p : payloads) {
        const std::string pc = "payload '" + p.spec.name + "'";
        if (names[p.spec.name]++) throw ValidationError(pc + ": duplicate name");
        const auto& ch = plan.channels[plan.index_of(p.channel)];
        p.spec.validate_on(grid);
        const bool down = p.direction == Direction::downlink;
        if (down == (p.placement == Placement::onu))
            throw ValidationError(pc + ": placement " + to_string(p.placement) + " does not match direction " +
                                  to_string(p.direction));
        if (p.placement == Placement::olt || p.placement == Placement::onu) check_digital_fit(ch, p.spec);
        if (p.placement == Placement::tunnel_upper || p.placement == Placement::tunnel_lower) {
            if (p.spec.kind != PayloadKind::rof) throw ValidationError(pc + ": only RoF payloads ride the tunnels");
            check_rof_fit(ch, p.spec);
        }
        const auto* onu = onu_for(p.channel);
        if (!onu) throw ValidationError(pc + ": channel '" + p.channel + "' has no ONU");
        if (down) {
            bool ok = false;
            for (const auto& f : onu->cfg.filters) ok = ok || f.label == p.onu_filter;
            if (!ok) throw ValidationError(pc + ": onu_filter '" + p.onu_filter + "' is not a filter of the ONU on '" +
                                           p.channel + "'");
        }
    }
    for (const auto& a : payloads)
        for (const auto& b : payloads)
            if (&a != &b && a.placement == b.placement && a.channel == b.channel &&
                (a.placement == Placement::tunnel_upper || a.placement == Placement::tunnel_lower))
                throw ValidationError("payloads '" + a.spec.name + "' and '" + b.spec.name + "' share one tunnel");
}

namespace detail {

inline nlohmann::ordered_json ring_json(const ModulatorRingSpec& r) {
    return {{"fwhm_hz", r.fwhm}, {"fsr_hz", r.fsr}, {"mod_efficiency_hz_per_v", r.mod_efficiency},
            {"bias_detuning_hz", r.bias_detuning}};
}

inline nlohmann::ordered_json pd_json(const PdParams& p) {
    return {{"responsivity_a_per_w", p.responsivity}, {"thermal_noise_psd_a2_per_hz", p.thermal_noise_psd},
            {"include_shot", p.include_shot}, {"seed", p.seed}};
}

inline nlohmann::ordered_json fiber_json(const FiberParams& f) {
    return {{"length_km", f.length_km}, {"atten_db_per_km", f.atten_db_per_km},
            {"dispersion_ps_nm_km", f.dispersion_ps_nm_km}, {"group_delay_us_per_km", f.group_delay_us_per_km},
            {"ref_wavelength_nm", f.ref_wavelength_nm}};
}

inline nlohmann::ordered_json ofdm_json(const OfdmConfig& c) {
    return {{"n_subcarriers", c.n_subcarriers}, {"qam_order", c.qam_order}, {"cp_fraction", c.cp_fraction},
            {"occupied_bandwidth_hz", c.occupied_bandwidth}, {"pilot_spacing", c.pilot_spacing}, {"seed", c.seed},
            {"data_symbols_per_frame", c.data_symbols_per_frame}, {"equalizer_window", c.equalizer_window}};
}

inline const char* sideband_name(Sideband s) { return s == Sideband::upper ? "upper" : "lower"; }

}  // namespace detail

/// Reproducibility manifest: every field of the resolved config, defaults included.
inline nlohmann::ordered_json to_json(const ScenarioConfig& c) {
    using nlohmann::ordered_json;
    using namespace detail;
    ordered_json j;
    j["name"] = c.name;
    j["seed"] = c.seed;
    j["grid"] = {{"sample_rate_hz", c.grid.sample_rate}, {"samples", c.grid.samples},
                 {"bin_width_hz", c.grid.bin_width()}};
    j["bits_per_point"] = c.bits_per_point;
    j["full_bits_per_point"] = c.full_bits_per_point;
    j["uplink_chunks"] = c.uplink_chunks;
    ordered_json chans = ordered_json::array();
    for (const auto& ch : c.plan.channels)
        chans.push_back({{"id", ch.id}, {"center_freq_hz", ch.center_freq}, {"slot_width_hz", ch.slot_width},
                         {"digital_subband_hz", ch.digital_subband}, {"rof_offset_hz", ch.rof_offset}});
    j["wdm"] = {{"channels", chans}};
    j["olt"] = {{"power_per_tone_dbm", c.olt.power_per_tone_dbm}, {"linewidth_hz", c.olt.linewidth},
                {"ring", ring_json(c.olt.ring)}, {"branch_phase_deg", c.olt.branch_phase * 180.0 / std::numbers::pi},
                {"sideband", sideband_name(c.olt.sideband)}, {"bus_stage_loss_db", c.olt.bus_stage_loss_db},
                {"seed", c.olt.seed}};
    j["smart_edge"] = {{"clock_ring", ring_json(c.edge.clock_ring)},
                       {"clock_amplitude_volt", c.edge.clock_amplitude_volt},
                       {"tunnel_ring", ring_json(c.edge.tunnel_ring)},
                       {"bus_stage_loss_db", c.edge.bus_stage_loss_db},
                       {"intercept", {{"centre_offset_hz", c.edge.intercept.centre_offset},
                                      {"bandwidth_hz", c.edge.intercept.bandwidth},
                                      {"order", c.edge.intercept.order}}},
                       {"intercept_pd", pd_json(c.edge.intercept_pd)}};
    j["fiber"] = {{"feeder", fiber_json(c.feeder)}, {"distribution", fiber_json(c.distribution)}};
    ordered_json profiles = ordered_json::object();
    for (const auto& [k, v] : c.profiles) profiles[k] = ofdm_json(v);
    j["profiles"] = profiles;
    ordered_json pays = ordered_json::array();
    for (const auto& p : c.payloads)
        pays.push_back({{"name", p.spec.name}, {"kind", to_string(p.spec.kind)},
                        {"direction", to_string(p.direction)}, {"placement", to_string(p.placement)},
                        {"channel", p.channel}, {"profile", p.profile}, {"center_hz", p.spec.center_hz},
                        {"carrier_hz", p.spec.carrier_hz()}, {"drive_rms_volt", p.spec.drive_rms_volt},
                        {"onu_filter", p.onu_filter}, {"bits_per_chunk", p.spec.bits_per_chunk(c.grid)}});
    j["payloads"] = pays;
    ordered_json onus = ordered_json::array();
    for (const auto& o : c.onus) {
        ordered_json filters = ordered_json::array();
        for (const auto& f : o.cfg.resolved_filters()) {
            const auto r = f.relative();
            filters.push_back({{"label", f.label}, {"role", to_string(f.role)}, {"band_low_hz", f.band_low},
                               {"band_high_hz", f.band_high}, {"order", f.order},
                               {"carrier_tap", f.carrier_tap ? ordered_json(*f.carrier_tap) : ordered_json()},
                               {"centre_offset_hz", r.centre_offset}, {"bandwidth_hz", r.bandwidth},
                               {"insertion_loss_db", f.insertion_loss_db}});
        }
        onus.push_back({{"channel", o.channel}, {"carrier_freq_hz", o.cfg.carrier_freq},
                        {"slot_width_hz", o.cfg.slot_width}, {"carrier_tap_fraction", o.cfg.carrier_tap_fraction},
                        {"filters", filters}, {"pd", pd_json(o.cfg.pd)},
                        {"bus_stage_loss_db", o.cfg.bus_stage_loss_db},
                        {"uplink", {{"ring", ring_json(o.cfg.uplink.ring)},
                                    {"branch_phase_deg", o.cfg.uplink.branch_phase * 180.0 / std::numbers::pi},
                                    {"sideband", sideband_name(o.cfg.uplink.sideband)},
                                    {"min_residual_carrier_dbm", o.cfg.uplink.min_residual_carrier_dbm}}}});
    }
    j["onus"] = onus;
    j["central_office"] = {{"pd", pd_json(c.co_pd)}, {"filter_order", c.co_filter_order}};
    j["sweep"] = {{"axis", c.sweep.axis}, {"points", c.sweep.points}};
    j["output"] = {{"dir", c.output_dir}, {"spectrum_resolution_hz", c.spectrum_resolution_hz}};
    return j;
}

}  // namespace rofsim
