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

#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "rofsim/photonics/bus.hpp"
#include "rofsim/photonics/modulator.hpp"
#include "rofsim/subsystems/wdm_plan.hpp"

namespace rofsim {

/// Central-office transmitter: laser tones and one IQ ring modulator bus for all channels.
struct OltConfig {
    double power_per_tone_dbm = 10.0;
    double linewidth = 0.0;
    ModulatorRingSpec ring;
    double branch_phase = std::numbers::pi / 2.0;
    Sideband sideband = Sideband::upper;
    double bus_stage_loss_db = kDefaultBusStageLossDb;
    std::uint64_t seed = 1;
};

/// Real I drive for an SSB payload and its Hilbert pair for the Q arm.
struct IqDrive {
    ComplexWaveform i;
    ComplexWaveform q;
};

inline IqDrive make_iq_drive(const ComplexWaveform& real_drive) { return {real_drive, hilbert(real_drive)}; }

/**
 * Drives the IQ bus: the comb splits into two arms, each holding one ring per channel
 * (the channel's I or Q drive), and the arms recombine with branch_phase. Channels
 * without a drive keep a static ring. The upper/lower sideband choice negates Q.
 */
inline ComplexWaveform olt_modulate(const ComplexWaveform& comb, const WdmPlan& plan, const OltConfig& cfg,
                                    std::span<const std::optional<IqDrive>> drives) {
    if (drives.size() != plan.channels.size())
        throw InvalidArgument("olt_transmit: " + num(drives.size()) + " payloads for " +
                              num(plan.channels.size()) + " channels");
    ComplexWaveform zero = comb.like(comb.size());
    zero.ref_freq = 0.0;
    auto arm = [&](bool q_arm) {
        std::vector<BusStage> stages;
        for (std::size_t k = 0; k < plan.channels.size(); ++k) {
            const auto ring = cfg.ring.at(plan.channels[k].center_freq);
            const ComplexWaveform* d = &zero;
            if (drives[k]) d = q_arm ? &drives[k]->q : &drives[k]->i;
            const double sign = (q_arm && cfg.sideband == Sideband::lower) ? -1.0 : 1.0;
            stages.push_back({"iq-" + plan.channels[k].id,
                              [ring, d, sign](const ComplexWaveform& f) {
                                  return sign > 0.0 ? apply_mrm(f, ring, *d) : apply_mrm(f, ring, scaled(*d, -1.0));
                              },
                              cfg.bus_stage_loss_db});
        }
        return stages;
    };
    const ComplexWaveform half = scaled(comb, 1.0 / std::sqrt(2.0));
    const auto a = cascade_bus(half, arm(false));
    const auto b = cascade_bus(half, arm(true));
    const cplx rot = std::polar(1.0, cfg.branch_phase);
    ComplexWaveform out = comb.like(comb.size());
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] = s * (a.samples[i] + rot * b.samples[i]);
    return out;
}

/// One digital payload per channel (nullopt leaves the channel unmodulated).
struct DigitalPayload {
    PayloadSpec spec;
    std::vector<std::uint8_t> bits;  // exactly bits_per_chunk
};

/// Laser comb plus SSB digital modulation of every channel inside its digital subband.
inline ComplexWaveform olt_transmit(const WdmPlan& plan, const OltConfig& cfg,
                                    std::span<const std::optional<DigitalPayload>> payloads, const ChunkGrid& g) {
    plan.validate();
    if (payloads.size() != plan.channels.size())
        throw InvalidArgument("olt_transmit: " + num(payloads.size()) + " payloads for " +
                              num(plan.channels.size()) + " channels");
    std::vector<std::optional<IqDrive>> drives(payloads.size());
    for (std::size_t k = 0; k < payloads.size(); ++k) {
        if (!payloads[k]) continue;
        check_digital_fit(plan.channels[k], payloads[k]->spec);
        drives[k] = make_iq_drive(make_drive(payloads[k]->spec, payloads[k]->bits, g));
    }
    const auto comb = carrier_field(plan, dbm_to_watt(cfg.power_per_tone_dbm), cfg.linewidth, cfg.seed, g);
    return olt_modulate(comb, plan, cfg, drives);
}

}  // namespace rofsim
