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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "rofsim/channel/photodetector.hpp"
#include "rofsim/photonics/bus.hpp"
#include "rofsim/photonics/filter.hpp"
#include "rofsim/photonics/modulator.hpp"
#include "rofsim/subsystems/wdm_plan.hpp"

namespace rofsim {

/// Drop filter placed relative to a channel carrier.
struct RelativeFilter {
    double centre_offset = 0.0;
    double bandwidth = 5e9;
    int order = 4;
    double insertion_loss_db = 0.0;

    DropFilterSpec at(double carrier) const {
        return DropFilterSpec{carrier + centre_offset, bandwidth, order, insertion_loss_db};
    }
};

/**
 * Smart-edge add/drop unit. Per channel: MRM-1 on the carrier driven by the clock makes
 * subcarriers at +-rof_offset, MRM-2 and MRM-3 sit on the upper and lower subcarrier and
 * carry one RoF payload each. An extra drop ring intercepts the RoF uplink.
 */
struct SmartEdgeConfig {
    ModulatorRingSpec clock_ring{2e9, 1e12, 1e9, -1.5e9};
    double clock_amplitude_volt = 1.0;
    ModulatorRingSpec tunnel_ring{2e9, 1e12, 1e9, 1e9};
    double bus_stage_loss_db = kDefaultBusStageLossDb;
    RelativeFilter intercept{-2.5e9, 5e9, 4, 0.0};
    PdParams intercept_pd;
};

/// Up to two RoF drives for a channel: [0] on the upper subcarrier, [1] on the lower.
using TunnelDrives = std::array<std::optional<ComplexWaveform>, 2>;

inline ComplexWaveform clock_drive(double f, double amplitude, const ChunkGrid& g) {
    if (!g.on_grid(f))
        throw ValidationError("smart edge: clock " + num(f) + " Hz is not on the chunk frequency grid");
    ComplexWaveform d(std::vector<cplx>(g.samples), g.sample_rate, 0.0);
    const double step = 2.0 * constants::pi * f / g.sample_rate;
    for (std::size_t i = 0; i < g.samples; ++i) d.samples[i] = {amplitude * std::cos(step * static_cast<double>(i)), 0.0};
    return d;
}

/// Bus stages of the overlay for every channel; idle channels keep parked rings (loss only).
inline std::vector<BusStage> smart_edge_stages(const WdmPlan& plan, const SmartEdgeConfig& cfg,
                                               std::span<const TunnelDrives> drives, const ChunkGrid& g) {
    if (drives.size() != plan.channels.size())
        throw InvalidArgument("smart_edge_overlay: " + num(drives.size()) + " payload sets for " +
                              num(plan.channels.size()) + " channels");
    std::vector<BusStage> stages;
    for (std::size_t k = 0; k < plan.channels.size(); ++k) {
        const auto& ch = plan.channels[k];
        const bool active = drives[k][0] || drives[k][1];
        const std::string id = ch.id;
        if (!active) {
            for (const char* name : {"mrm1-", "mrm2-", "mrm3-"}) stages.push_back({name + id, {}, cfg.bus_stage_loss_db});
            continue;
        }
        const auto mrm1 = cfg.clock_ring.at(ch.center_freq);
        auto clock = std::make_shared<ComplexWaveform>(clock_drive(ch.rof_offset, cfg.clock_amplitude_volt, g));
        stages.push_back({"mrm1-" + id,
                          [mrm1, clock](const ComplexWaveform& f) { return apply_mrm(f, mrm1, *clock); },
                          cfg.bus_stage_loss_db});
        for (int t = 0; t < 2; ++t) {
            const double sub = ch.center_freq + (t == 0 ? ch.rof_offset : -ch.rof_offset);
            const auto ring = cfg.tunnel_ring.at(sub);
            const std::string label = (t == 0 ? "mrm2-" : "mrm3-") + id;
            if (!drives[k][t]) {
                stages.push_back({label, [ring](const ComplexWaveform& f) { return apply_mrm_static(f, ring); },
                                  cfg.bus_stage_loss_db});
                continue;
            }
            auto d = std::make_shared<ComplexWaveform>(*drives[k][t]);
            stages.push_back({label, [ring, d](const ComplexWaveform& f) { return apply_mrm(f, ring, *d); },
                              cfg.bus_stage_loss_db});
        }
    }
    return stages;
}

/// Generates the subcarriers and modulates the RoF payloads onto them.
inline ComplexWaveform smart_edge_overlay(const ComplexWaveform& field, const WdmPlan& plan,
                                          const SmartEdgeConfig& cfg, std::span<const TunnelDrives> drives,
                                          const ChunkGrid& g) {
    require_valid(field, "smart_edge_overlay");
    for (std::size_t k = 0; k < plan.channels.size() && k < drives.size(); ++k) {
        if (!(drives[k][0] || drives[k][1])) continue;
        const double off = plan.channels[k].center_freq - field.ref_freq;
        if (tone_power(field, off) <= 1e-3 * mean_power(field))
            throw ToneNotFoundError("smart_edge_overlay: no carrier found for channel '" + plan.channels[k].id + "'");
    }
    return cascade_bus(field, smart_edge_stages(plan, cfg, drives, g));
}

struct InterceptResult {
    ComplexWaveform electrical;  // photocurrent of the dropped band, noiseless
    ComplexWaveform through;     // field continuing to the central office
};

/// Drops the RoF uplink band of one channel (with a share of its carrier) and detects it.
inline InterceptResult smart_edge_intercept_uplink(const ComplexWaveform& field, const WdmPlan& plan,
                                                   const SmartEdgeConfig& cfg, std::size_t channel) {
    if (channel >= plan.channels.size())
        throw InvalidArgument("smart_edge_intercept_uplink: channel index " + num(channel) + " out of range");
    const auto& ch = plan.channels[channel];
    if (tone_power(field, ch.center_freq - field.ref_freq) <= 1e-3 * std::max(mean_power(field), 1e-300))
        throw ToneNotFoundError("smart_edge_intercept_uplink: channel '" + ch.id + "' carries no uplink carrier");
    auto r = drop_filter(field, cfg.intercept.at(ch.center_freq));
    InterceptResult out{photodetect_noiseless(r.dropped, cfg.intercept_pd.responsivity), std::move(r.through)};
    return out;
}

}  // namespace rofsim
