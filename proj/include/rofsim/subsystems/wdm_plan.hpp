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
#include <optional>
#include <string>
#include <vector>

#include "rofsim/core/random.hpp"
#include "rofsim/photonics/comb.hpp"
#include "rofsim/photonics/ring.hpp"
#include "rofsim/subsystems/payload.hpp"

namespace rofsim {

/**
 * One WDM channel: a 50 GHz slot around the carrier, a digital subband of
 * +-digital_subband/2 around the carrier, and RoF subcarriers at +-rof_offset.
 */
struct WdmChannel {
    std::string id;
    double center_freq = 193.4e12;
    double slot_width = 50e9;
    double digital_subband = 20e9;
    double rof_offset = 20e9;

    double slot_low() const { return center_freq - slot_width / 2.0; }
    double slot_high() const { return center_freq + slot_width / 2.0; }
    /// Widest RoF band half-width that stays clear of the digital subband and the slot edge.
    double rof_halfwidth_limit() const {
        return std::min(rof_offset - digital_subband / 2.0, slot_width / 2.0 - rof_offset);
    }
};

struct WdmPlan {
    std::vector<WdmChannel> channels;

    void validate() const {
        if (channels.empty()) throw ValidationError("wdm: at least one channel is required");
        for (const auto& c : channels) {
            if (!(c.slot_width > 0.0) || !(c.digital_subband > 0.0) || !(c.rof_offset > 0.0))
                throw ValidationError("wdm channel '" + c.id + "': widths and offsets must be positive");
            if (c.rof_halfwidth_limit() <= 0.0)
                throw ValidationError("wdm channel '" + c.id + "': digital subband " +
                                      num(c.digital_subband) + " Hz and subcarrier offset " +
                                      num(c.rof_offset) + " Hz do not fit the " +
                                      num(c.slot_width) + " Hz slot");
        }
        std::vector<const WdmChannel*> sorted;
        for (const auto& c : channels) sorted.push_back(&c);
        std::sort(sorted.begin(), sorted.end(),
                  [](const WdmChannel* a, const WdmChannel* b) { return a->center_freq < b->center_freq; });
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i]->slot_low() < sorted[i - 1]->slot_high())
                throw ValidationError("wdm: slots of channels '" + sorted[i - 1]->id + "' and '" + sorted[i]->id +
                                      "' overlap");
    }

    /// Mean carrier frequency, used as the simulation reference.
    double reference_freq() const {
        double s = 0.0;
        for (const auto& c : channels) s += c.center_freq;
        return channels.empty() ? 0.0 : s / static_cast<double>(channels.size());
    }

    std::size_t index_of(const std::string& id) const {
        for (std::size_t i = 0; i < channels.size(); ++i)
            if (channels[i].id == id) return i;
        throw ValidationError("wdm: unknown channel '" + id + "'");
    }
};

/// Checks a RoF payload against the space between the digital subband and the slot edge.
inline void check_rof_fit(const WdmChannel& ch, const PayloadSpec& p) {
    const double half = p.ofdm.occupied_bandwidth / 2.0;
    if (half > ch.rof_halfwidth_limit())
        throw ValidationError("payload '" + p.name + "': RoF bandwidth " + num(p.ofdm.occupied_bandwidth) +
                              " Hz does not fit next to the subcarrier in channel '" + ch.id + "' (limit " +
                              num(2.0 * ch.rof_halfwidth_limit()) + " Hz)");
}

/// Checks a digital payload against the channel's digital subband (single sideband).
inline void check_digital_fit(const WdmChannel& ch, const PayloadSpec& p) {
    if (p.band_high() > ch.digital_subband / 2.0)
        throw ValidationError("payload '" + p.name + "': band up to " + num(p.band_high()) +
                              " Hz exceeds the digital subband half-width " + num(ch.digital_subband / 2.0) +
                              " Hz of channel '" + ch.id + "'");
}

/// Behavioral parameters of a modulator ring; the resonance is placed relative to a target tone.
struct ModulatorRingSpec {
    double fwhm = 2e9;
    double fsr = 1e12;
    double mod_efficiency = 1e9;   // Hz/V
    double bias_detuning = 1e9;    // resonance minus tone at zero drive

    void validate() const {
        if (!(fwhm > 0.0) || !(fsr > fwhm)) throw ValidationError("ring: need 0 < fwhm < fsr");
    }

    /// Critically coupled ring whose resonance sits bias_detuning away from `tone`.
    RingParams at(double tone) const {
        validate();
        auto p = make_critical_ring(tone, fwhm, fsr, mod_efficiency);
        p.tuning_offset = bias_detuning;
        return p;
    }
};

/// Laser tones at the plan's carriers as one field around the plan reference.
inline ComplexWaveform carrier_field(const WdmPlan& plan, double power_per_tone_w, double linewidth,
                                     std::uint64_t seed, const ChunkGrid& g) {
    plan.validate();
    const double ref = plan.reference_freq();
    ComplexWaveform out(std::vector<cplx>(g.samples), g.sample_rate, ref);
    for (std::size_t k = 0; k < plan.channels.size(); ++k) {
        const double off = plan.channels[k].center_freq - ref;
        if (!g.on_grid(off))
            throw ValidationError("wdm channel '" + plan.channels[k].id + "': carrier offset " + num(off) +
                                  " Hz is not on the chunk frequency grid");
        CombSpec tone;
        tone.start_freq = plan.channels[k].center_freq;
        tone.power_per_tone = power_per_tone_w;
        tone.linewidth = linewidth;
        tone.seed = derive_seed(seed, 0x1a5e, k);
        const auto w = comb_source(tone, g.duration(), g.sample_rate, ref);
        for (std::size_t i = 0; i < g.samples; ++i) out.samples[i] += w.samples[i];
    }
    return out;
}

}  // namespace rofsim
