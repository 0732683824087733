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


#include <gtest/gtest.h>

#include <cmath>

#include "rofsim/channel/fiber.hpp"
#include "rofsim/subsystems/onu.hpp"
#include "test_util.hpp"

using namespace rofsim;

namespace {

constexpr double kCarrier = 193.4e12;

OfdmConfig ofdm(std::size_t n, int qam, double bw, std::size_t symbols, std::size_t pilot_spacing = 8) {
    OfdmConfig c;
    c.n_subcarriers = n;
    c.qam_order = qam;
    c.occupied_bandwidth = bw;
    c.data_symbols_per_frame = symbols;
    c.pilot_spacing = pilot_spacing;
    return c;
}

// Payload whose subcarrier 0 sits exactly on carrier_hz.
PayloadSpec payload(const std::string& name, PayloadKind kind, const OfdmConfig& c, double carrier_hz, double rms) {
    PayloadSpec p;
    p.name = name;
    p.kind = kind;
    p.ofdm = c;
    p.center_hz = carrier_hz + c.band_centre_offset();
    p.drive_rms_volt = rms;
    return p;
}

WdmPlan one_channel(double f = kCarrier) {
    WdmPlan plan;
    plan.channels.push_back({"ch0", f});
    return plan;
}

BerReport detect(const PayloadSpec& p, std::span<const std::uint8_t> bits, const ComplexWaveform& electrical,
                 const ChunkGrid& g) {
    const auto rx = demodulate_payload_band(p, extract_payload_band(p, electrical), p.frames_per_chunk(g));
    return ber_evm_metrics(bits, rx.bits, rx.evm_rms);
}

double evm_db(double evm) { return 20.0 * std::log10(evm); }

// Grid of the small end-to-end tests: 64 GS/s, 1.024 us.
const ChunkGrid kSmall{64e9, std::size_t{1} << 16};

PayloadSpec small_digital() { return payload("dig", PayloadKind::digital, ofdm(64, 4, 2e9, 8), 5e9, 0.1); }

}  // namespace

TEST(Olt, SingleChannelLoopbackIsErrorFree) {
    const auto plan = one_channel();
    const auto spec = small_digital();
    std::vector<std::optional<DigitalPayload>> pl{DigitalPayload{spec, random_bits(spec.bits_per_chunk(kSmall), 3)}};
    const auto field = olt_transmit(plan, OltConfig{}, pl, kSmall);
    const auto r = detect(spec, pl[0]->bits, photodetect_noiseless(field, 1.0), kSmall);
    EXPECT_EQ(r.bit_errors, 0u);
    EXPECT_GT(r.total_bits, 0u);
}

TEST(Olt, PayloadCountMustMatchPlan) {
    const auto plan = one_channel();
    std::vector<std::optional<DigitalPayload>> pl(2);
    EXPECT_THROW(olt_transmit(plan, OltConfig{}, pl, kSmall), InvalidArgument);
}

TEST(Olt, DigitalBandMustFitSubband) {
    auto plan = one_channel();
    plan.channels[0].digital_subband = 8e9;  // +-4 GHz, band reaches 6 GHz
    const auto spec = small_digital();
    std::vector<std::optional<DigitalPayload>> pl{DigitalPayload{spec, random_bits(spec.bits_per_chunk(kSmall), 3)}};
    EXPECT_THROW(olt_transmit(plan, OltConfig{}, pl, kSmall), ValidationError);
}

TEST(Olt, AdjacentSlotLeakageBelowThirtyDb) {
    const ChunkGrid g{256e9, std::size_t{1} << 17};
    WdmPlan plan;
    plan.channels.push_back({"a", kCarrier - 50e9});
    plan.channels.push_back({"b", kCarrier + 50e9});
    auto spec = payload("dig", PayloadKind::digital, ofdm(64, 4, 2e9, 8), 7.8125e9, 0.1);
    std::vector<std::optional<DigitalPayload>> pl{DigitalPayload{spec, random_bits(spec.bits_per_chunk(g), 5)},
                                                  std::nullopt};
    const auto field = olt_transmit(plan, OltConfig{}, pl, g);
    // Modulated power of channel a inside each slot, carriers excluded (PSD integration).
    const PowerSpectrum ps(field);
    auto slot_power = [&](double centre) {
        const double lo = centre - 25e9 - kCarrier, hi = centre + 25e9 - kCarrier, c = centre - kCarrier;
        return ps.band(lo, hi) - ps.band(c - 2 * g.bin_width(), c + 2 * g.bin_width());
    };
    const double own = slot_power(kCarrier - 50e9);
    const double adjacent = slot_power(kCarrier + 50e9);
    ASSERT_GT(own, 0.0);
    EXPECT_LT(10.0 * std::log10(adjacent / own), -30.0);
    // Essentially all of the modulated power stays in the own slot.
    const double modulated = ps.total() - ps.band(-50e9 - 2 * g.bin_width(), -50e9 + 2 * g.bin_width()) -
                             ps.band(50e9 - 2 * g.bin_width(), 50e9 + 2 * g.bin_width());
    EXPECT_GT(own / modulated, 0.99);
}

TEST(WdmPlan, OverlappingSlotsNameBothChannels) {
    WdmPlan plan;
    plan.channels.push_back({"left", kCarrier});
    plan.channels.push_back({"right", kCarrier + 40e9});
    try {
        plan.validate();
        FAIL() << "overlap accepted";
    } catch (const ValidationError& e) {
        const std::string m = e.what();
        EXPECT_NE(m.find("left"), std::string::npos);
        EXPECT_NE(m.find("right"), std::string::npos);
    }
}

TEST(WdmPlan, SubbandAndSubcarriersMustFitSlot) {
    auto plan = one_channel();
    plan.channels[0].rof_offset = 26e9;
    EXPECT_THROW(plan.validate(), ValidationError);
    plan.channels[0].rof_offset = 20e9;
    plan.channels[0].digital_subband = 42e9;
    EXPECT_THROW(plan.validate(), ValidationError);
}

TEST(WdmPlan, RofPayloadWiderThanGuardIsRejected) {
    const auto ch = one_channel().channels[0];
    auto p = payload("wide", PayloadKind::rof, ofdm(64, 4, 12e9, 8), 8e9, 0.1);
    EXPECT_THROW(check_rof_fit(ch, p), ValidationError);
    p.ofdm.occupied_bandwidth = 8e9;
    EXPECT_NO_THROW(check_rof_fit(ch, p));
}

namespace {

const ChunkGrid kEdge{128e9, std::size_t{1} << 16};

struct EdgeSetup {
    WdmPlan plan = one_channel();
    PayloadSpec digital = payload("dig", PayloadKind::digital, ofdm(64, 4, 2e9, 8), 7.8125e9, 0.1);
    PayloadSpec tunnel1 = payload("t1", PayloadKind::rof, ofdm(64, 4, 2e9, 8), 1.5625e9, 0.2);
    PayloadSpec tunnel2 = payload("t2", PayloadKind::rof, ofdm(64, 4, 2e9, 8), 3.125e9, 0.2);
    std::vector<std::uint8_t> dig_bits = random_bits(digital.bits_per_chunk(kEdge), 11);
    std::vector<std::uint8_t> t1_bits = random_bits(tunnel1.bits_per_chunk(kEdge), 12);
    std::vector<std::uint8_t> t2_bits = random_bits(tunnel2.bits_per_chunk(kEdge), 13);
    SmartEdgeConfig edge;

    ComplexWaveform downlink() const {
        std::vector<std::optional<DigitalPayload>> pl{DigitalPayload{digital, dig_bits}};
        return olt_transmit(plan, OltConfig{}, pl, kEdge);
    }
    TunnelDrives drives(bool t1, bool t2) const {
        TunnelDrives d;
        if (t1) d[0] = make_drive(tunnel1, t1_bits, kEdge);
        if (t2) d[1] = make_drive(tunnel2, t2_bits, kEdge);
        return d;
    }
};

// Subcarrier tunnel dropped with a 10 GHz order-4 filter, detected with receiver noise.
ComplexWaveform tunnel_photocurrent(const ComplexWaveform& field, double offset, std::uint64_t seed) {
    const auto d = drop_filter(field, DropFilterSpec{kCarrier + offset, 10e9, 4, 0.0});
    PdParams pd;
    pd.seed = seed;
    return photodetect(d.dropped, pd);
}

}  // namespace

TEST(SmartEdge, EmptyPayloadsOnlyApplyBusLoss) {
    EdgeSetup s;
    const auto in = s.downlink();
    std::vector<TunnelDrives> none(1);
    const auto out = smart_edge_overlay(in, s.plan, s.edge, none, kEdge);
    const double a = db_to_amplitude(-3 * s.edge.bus_stage_loss_db);
    for (std::size_t i = 0; i < in.size(); i += 97) {
        EXPECT_NEAR(out.samples[i].real(), a * in.samples[i].real(), 1e-12);
        EXPECT_NEAR(out.samples[i].imag(), a * in.samples[i].imag(), 1e-12);
    }
}

TEST(SmartEdge, TunnelsAndDigitalAllRecovered) {
    EdgeSetup s;
    const auto in = s.downlink();
    std::vector<TunnelDrives> d{s.drives(true, true)};
    const auto out = smart_edge_overlay(in, s.plan, s.edge, d, kEdge);
    const auto r1 = detect(s.tunnel1, s.t1_bits, tunnel_photocurrent(out, 20e9, 1), kEdge);
    const auto r2 = detect(s.tunnel2, s.t2_bits, tunnel_photocurrent(out, -20e9, 2), kEdge);
    const auto rd = detect(s.digital, s.dig_bits, photodetect_noiseless(drop_filter(out, DropFilterSpec{kCarrier + 4e9, 16e9, 4, 0.0}).dropped, 1.0), kEdge);
    EXPECT_TRUE(r1.passes_fec) << r1.ber << " evm " << r1.evm_rms;
    EXPECT_TRUE(r2.passes_fec) << r2.ber << " evm " << r2.evm_rms;
    EXPECT_TRUE(rd.passes_fec) << rd.ber << " evm " << rd.evm_rms;
}

TEST(SmartEdge, SubcarriersAppearAtPlusMinusOffset) {
    EdgeSetup s;
    const auto in = s.downlink();
    std::vector<TunnelDrives> d{s.drives(true, true)};
    const auto out = smart_edge_overlay(in, s.plan, s.edge, d, kEdge);
    const double c = tone_power(out, 0.0);
    EXPECT_GT(tone_power(out, 20e9), 1e-3 * c);
    EXPECT_GT(tone_power(out, -20e9), 1e-3 * c);
}

TEST(SmartEdge, DigitalSubbandPerturbedLessThanHalfDb) {
    EdgeSetup s;
    const auto in = s.downlink();
    std::vector<TunnelDrives> d{s.drives(true, true)};
    const auto out = smart_edge_overlay(in, s.plan, s.edge, d, kEdge);
    const PowerSpectrum a(in), b(out);
    const double lo = s.digital.band_low(), hi = s.digital.band_high();
    EXPECT_LT(std::abs(10.0 * std::log10(b.band(lo, hi) / a.band(lo, hi))), 0.5);
}

TEST(SmartEdge, TunnelSeparationWithinPointTwoDbEvm) {
    EdgeSetup s;
    const auto in = s.downlink();
    std::vector<TunnelDrives> both{s.drives(true, true)}, only1{s.drives(true, false)}, only2{s.drives(false, true)};
    const auto f_both = smart_edge_overlay(in, s.plan, s.edge, both, kEdge);
    const auto f_1 = smart_edge_overlay(in, s.plan, s.edge, only1, kEdge);
    const auto f_2 = smart_edge_overlay(in, s.plan, s.edge, only2, kEdge);
    const auto a1 = detect(s.tunnel1, s.t1_bits, tunnel_photocurrent(f_both, 20e9, 7), kEdge);
    const auto b1 = detect(s.tunnel1, s.t1_bits, tunnel_photocurrent(f_1, 20e9, 7), kEdge);
    const auto a2 = detect(s.tunnel2, s.t2_bits, tunnel_photocurrent(f_both, -20e9, 8), kEdge);
    const auto b2 = detect(s.tunnel2, s.t2_bits, tunnel_photocurrent(f_2, -20e9, 8), kEdge);
    EXPECT_LT(evm_db(a1.evm_rms) - evm_db(b1.evm_rms), 0.2);
    EXPECT_LT(evm_db(a2.evm_rms) - evm_db(b2.evm_rms), 0.2);
}

TEST(SmartEdge, MissingCarrierIsReported) {
    EdgeSetup s;
    auto in = s.downlink();
    for (auto& v : in.samples) v = 0.0;
    in.samples[0] = 1e-3;  // broadband, no tone at the carrier
    std::vector<TunnelDrives> d{s.drives(true, false)};
    EXPECT_THROW(smart_edge_overlay(in, s.plan, s.edge, d, kEdge), ToneNotFoundError);
}

namespace {

struct UplinkSetup {
    WdmPlan plan = one_channel();
    PayloadSpec rof = payload("up-rof", PayloadKind::rof, ofdm(64, 4, 2e9, 8), 2.5e9, 0.05);
    PayloadSpec digital = payload("up-dig", PayloadKind::digital, ofdm(64, 4, 2e9, 8), 7.8125e9, 0.1);
    std::vector<std::uint8_t> rof_bits = random_bits(rof.bits_per_chunk(kSmall), 21);
    std::vector<std::uint8_t> dig_bits = random_bits(digital.bits_per_chunk(kSmall), 22);
    SmartEdgeConfig edge;

    // Carrier with lower-sideband uplinks; either may be muted.
    ComplexWaveform field(bool with_rof, bool with_digital) const {
        const auto carrier = carrier_field(plan, 1e-3, 0.0, 1, kSmall);
        auto drive = make_drive(rof, rof_bits, kSmall);
        for (auto& v : drive.samples) v *= with_rof ? 1.0 : 0.0;
        if (with_digital) drive = add(drive, make_drive(digital, dig_bits, kSmall));
        IqMrmConfig iq;
        iq.ring_i = ModulatorRingSpec{}.at(kCarrier);
        iq.ring_q = iq.ring_i;
        iq.sideband = Sideband::lower;
        return iq_mrm_ssb(carrier, iq, drive, hilbert(drive));
    }
};

}  // namespace

TEST(SmartEdgeIntercept, RecoversRofUplink) {
    UplinkSetup s;
    const auto r = smart_edge_intercept_uplink(s.field(true, true), s.plan, s.edge, 0);
    const auto ber = detect(s.rof, s.rof_bits, r.electrical, kSmall);
    EXPECT_LT(ber.evm_rms, 0.05);
    EXPECT_EQ(ber.bit_errors, 0u);
}

TEST(SmartEdgeIntercept, NoUplinkGivesNearNoiseBand) {
    UplinkSetup s;
    const auto ref = smart_edge_intercept_uplink(s.field(true, false), s.plan, s.edge, 0);
    const auto idle = smart_edge_intercept_uplink(s.field(false, false), s.plan, s.edge, 0);
    const double lo = s.rof.band_low(), hi = s.rof.band_high();
    const double p_ref = PowerSpectrum(ref.electrical).band(lo, hi);
    const double p_idle = PowerSpectrum(idle.electrical).band(lo, hi);
    EXPECT_LT(10.0 * std::log10(std::max(p_idle, 1e-300) / p_ref), -20.0);
}

TEST(SmartEdgeIntercept, EmptyChannelThrows) {
    UplinkSetup s;
    auto f = s.field(false, false);
    for (auto& v : f.samples) v = 0.0;
    EXPECT_THROW(smart_edge_intercept_uplink(f, s.plan, s.edge, 0), ToneNotFoundError);
    EXPECT_THROW(smart_edge_intercept_uplink(f, s.plan, s.edge, 3), InvalidArgument);
}

TEST(SmartEdgeIntercept, DigitalUplinkPassesThrough) {
    UplinkSetup s;
    const auto in = s.field(true, true);
    const auto r = smart_edge_intercept_uplink(in, s.plan, s.edge, 0);
    const PowerSpectrum a(in), b(r.through);
    const double lo = -s.digital.band_high(), hi = -s.digital.band_low();
    EXPECT_LT(std::abs(10.0 * std::log10(b.band(lo, hi) / a.band(lo, hi))), 0.5);
    const auto ber = detect(s.digital, s.dig_bits, photodetect_noiseless(r.through, 1.0), kSmall);
    EXPECT_TRUE(ber.passes_fec) << ber.ber;
}

namespace {

// Broadband 16-QAM OFDM over [4.75, 9.5] GHz plus five 125 MHz RF channels at 1.0..2.0 GHz.
struct OnuSetup {
    ChunkGrid grid{64e9, std::size_t{1} << 17};
    double carrier = kCarrier;
    PayloadSpec broadband;
    std::vector<PayloadSpec> rf;
    std::vector<std::vector<std::uint8_t>> bits;
    OnuConfig cfg;

    explicit OnuSetup(ChunkGrid g = {64e9, std::size_t{1} << 17}) : grid(g) {
        auto bb = ofdm(256, 16, 4.75e9, 8, 16);
        broadband = payload("broadband", PayloadKind::digital, bb, 7.125e9 - bb.band_centre_offset(), 0.3);
        auto small = ofdm(16, 4, 125e6, 14, 8);
        for (int k = 0; k < 5; ++k)
            rf.push_back(payload("rf" + std::to_string(k), PayloadKind::rof, small,
                                 1.0e9 + 0.25e9 * k - small.band_centre_offset(), 0.06));
        bits.push_back(random_bits(broadband.bits_per_chunk(grid), 31));
        for (int k = 0; k < 5; ++k) bits.push_back(random_bits(rf[k].bits_per_chunk(grid), 32 + k));

        cfg.carrier_freq = carrier;
        OnuFilter rof{"mrr-rof", FilterRole::rof, 0.9375e9, 2.0625e9, 4, 0.602};
        OnuFilter wide{"mrr-broadband", FilterRole::broadband, 4.75e9, 9.5e9, 4, std::nullopt};
        cfg.filters = {rof, wide};
        cfg.carrier_tap_fraction = 0.37;
    }

    ComplexWaveform electrical_drive() const {
        auto d = make_drive(broadband, bits[0], grid);
        for (int k = 0; k < 5; ++k) d = add(d, make_drive(rf[k], bits[k + 1], grid));
        return d;
    }

    ComplexWaveform downlink() const {
        WdmPlan plan = one_channel(carrier);
        const auto tones = carrier_field(plan, dbm_to_watt(10.0), 0.0, 3, grid);
        std::vector<std::optional<IqDrive>> d{make_iq_drive(electrical_drive())};
        return olt_modulate(tones, plan, OltConfig{}, d);
    }

    std::vector<OnuPayload> payloads() const {
        std::vector<OnuPayload> p{{"mrr-broadband", broadband, bits[0]}};
        for (int k = 0; k < 5; ++k) p.push_back({"mrr-rof", rf[k], bits[k + 1]});
        return p;
    }

    ComplexWaveform uplink_drive(double scale = 1.0) const {
        auto d = make_drive(broadband, random_bits(broadband.bits_per_chunk(grid), 77), grid);
        for (auto& v : d.samples) v *= scale;
        return d;
    }
    std::vector<std::pair<double, double>> uplink_bands() const {
        return {{-broadband.band_high(), -broadband.band_low()}};
    }
};

// Carrier drop of an order-n Butterworth-type filter, |D|^2 = 1 / (1 + x^(2n)).
double butterworth_drop(double distance, double halfwidth, int order) {
    return 1.0 / (1.0 + std::pow(distance / halfwidth, 2.0 * order));
}

}  // namespace

TEST(Onu, TapHalfwidthDropsRequestedCarrierFraction) {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const double frac = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
        const double dist = std::uniform_real_distribution<double>(0.2e9, 20e9)(rng);
        const int order = 1 + t % 5;
        const double hw = tap_halfwidth(dist, frac, order);
        EXPECT_NEAR(butterworth_drop(dist, hw, order), frac, 1e-9);
        const auto r = drop_filter_response(DropFilterSpec{dist, 2 * hw, order, 0.0}, 0.0);
        EXPECT_NEAR(std::norm(r.drop), frac, 1e-9);
    }
    EXPECT_THROW(tap_halfwidth(1e9, 1.0, 2), ValidationError);
}

TEST(Onu, BroadbandAndFiveRfChannelsBelowFec) {
    OnuSetup s;
    const auto r = onu_receive(s.downlink(), s.cfg, s.payloads(), s.grid);
    ASSERT_EQ(r.payloads.size(), 6u);
    for (const auto& p : r.payloads) EXPECT_TRUE(p.ber.passes_fec) << p.name << " ber " << p.ber.ber << " evm " << p.ber.evm_rms;
}

TEST(Onu, CarrierLedgerMatchesFilterShapes) {
    OnuSetup s;
    const auto d = onu_drop(s.downlink(), s.cfg);
    const double bus = s.cfg.bus_stage_loss_db;
    EXPECT_NEAR(d.ledger.rof_tap_cost_db, -10.0 * std::log10(1.0 - 0.602) + bus, 0.02);
    EXPECT_NEAR(d.ledger.broadband_tap_cost_db, -10.0 * std::log10(1.0 - 0.37) + bus, 0.02);
    EXPECT_NEAR(d.ledger.rof_tap_cost_db, 4.0, 1.0);
    EXPECT_NEAR(d.ledger.total_cost_db, d.ledger.rof_tap_cost_db + d.ledger.broadband_tap_cost_db, 1e-9);
}

TEST(Onu, CarrierConservation) {
    OnuSetup s;
    const auto in = s.downlink();
    const auto d = onu_drop(in, s.cfg);
    const double c_in = carrier_power(in, s.carrier);
    double c_out = carrier_power(d.residual, s.carrier), p_out = mean_power(d.residual);
    for (const auto& b : d.branches) {
        c_out += carrier_power(b.field, s.carrier);
        p_out += mean_power(b.field);
    }
    EXPECT_LE(c_out, c_in * (1.0 + 1e-9));
    EXPECT_LE(p_out, mean_power(in) * (1.0 + 1e-9));
    EXPECT_GT(p_out, mean_power(in) * db_to_linear(-2.0 * s.cfg.bus_stage_loss_db) * (1.0 - 1e-9));
}

TEST(Onu, FiltersDetunedOutOfSlotDropNothing) {
    OnuSetup s({128e9, std::size_t{1} << 18});
    const auto in = s.downlink();
    const auto ref = onu_drop(in, s.cfg);
    auto detuned = s.cfg;
    detuned.carrier_freq += 50e9;
    const auto d = onu_drop(in, detuned);
    const double p_ref = mean_power(find_branch(ref, "mrr-broadband").field);
    const double p = mean_power(find_branch(d, "mrr-broadband").field);
    EXPECT_LT(10.0 * std::log10(std::max(p, 1e-300) / p_ref), -40.0);
    EXPECT_THROW(onu_receive(in, detuned, s.payloads(), s.grid), ToneNotFoundError);
}

TEST(Onu, InvalidConfigsRejected) {
    OnuSetup s;
    auto c = s.cfg;
    c.carrier_tap_fraction = 1.0;
    EXPECT_THROW(c.validate(), ValidationError);
    c = s.cfg;
    c.filters[0].band_low = 20e9;
    c.filters[0].band_high = 24e9;
    EXPECT_THROW(c.validate(), ValidationError);  // passband leaves the slot
}

TEST(Onu, UplinkClearsResidualDownlinkByThirteenDb) {
    OnuSetup s;
    const auto d = onu_drop(s.downlink(), s.cfg);
    const auto bands = s.uplink_bands();
    const auto r = onu_remodulate(d.residual, s.cfg, s.uplink_drive(), bands);
    ASSERT_TRUE(r.uplink_to_residual_db.has_value());
    EXPECT_GE(*r.uplink_to_residual_db, 13.0);
}

TEST(Onu, UplinkAndDownlinkOnOppositeSidesOfCarrier) {
    OnuSetup s;
    const auto d = onu_drop(s.downlink(), s.cfg);
    const auto bands = s.uplink_bands();
    const auto r = onu_remodulate(d.residual, s.cfg, s.uplink_drive(), bands);
    EXPECT_GT(d.downlink_centroid, 0.0);
    EXPECT_LT(r.uplink_centroid, 0.0);
}

TEST(Onu, ZeroUplinkDriveHasNoRatio) {
    OnuSetup s;
    const auto d = onu_drop(s.downlink(), s.cfg);
    const auto bands = s.uplink_bands();
    const auto r = onu_remodulate(d.residual, s.cfg, s.uplink_drive(0.0), bands);
    EXPECT_FALSE(r.uplink_to_residual_db.has_value());
}

TEST(Onu, WeakResidualCarrierIsABudgetError) {
    OnuSetup s;
    const auto d = onu_drop(s.downlink(), s.cfg);
    auto c = s.cfg;
    c.uplink.min_residual_carrier_dbm = 20.0;
    const auto bands = s.uplink_bands();
    EXPECT_THROW(onu_remodulate(d.residual, c, s.uplink_drive(), bands), PowerBudgetError);
}

TEST(Onu, ColorlessAcrossOneSlot) {
    const ChunkGrid g{128e9, std::size_t{1} << 18};
    OnuSetup s(g);
    const auto in = s.downlink();
    auto moved = frequency_shift(in, 50e9);
    auto cfg2 = s.cfg;
    cfg2.carrier_freq += 50e9;
    const auto a = onu_receive(in, s.cfg, s.payloads(), g);
    const auto b = onu_receive(moved, cfg2, s.payloads(), g);
    EXPECT_NEAR(a.ledger.rof_tap_cost_db, b.ledger.rof_tap_cost_db, 0.1);
    EXPECT_NEAR(a.ledger.residual_dbm, b.ledger.residual_dbm, 0.1);
    for (std::size_t i = 0; i < a.payloads.size(); ++i)
        EXPECT_NEAR(evm_db(a.payloads[i].ber.evm_rms), evm_db(b.payloads[i].ber.evm_rms), 0.1) << a.payloads[i].name;
}

TEST(Onu, ReceiveIsDeterministic) {
    OnuSetup s;
    const auto in = s.downlink();
    const auto a = onu_receive(in, s.cfg, s.payloads(), s.grid);
    const auto b = onu_receive(in, s.cfg, s.payloads(), s.grid);
    EXPECT_EQ(a.residual.samples, b.residual.samples);
    for (std::size_t i = 0; i < a.payloads.size(); ++i) {
        EXPECT_EQ(a.payloads[i].ber.bit_errors, b.payloads[i].ber.bit_errors);
        EXPECT_EQ(a.payloads[i].ber.evm_rms, b.payloads[i].ber.evm_rms);
    }
}

TEST(Onu, RequiredExtinctionFollowsLevels) {
    EXPECT_DOUBLE_EQ(required_drop_extinction_db(13.0, -10.0, -15.0), 18.0);
    OnuFilter f{"f", FilterRole::rof, 1e9, 3e9, 2, std::nullopt};
    f.bandwidth = 4e9;
    f.centre_offset = 2e9;
    // Least suppression over [1.5, 2.5] GHz sits at the band edges: x = 0.25.
    const double x = 0.25;
    const double edge = std::pow(x, 4) / (1.0 + std::pow(x, 4));
    EXPECT_NEAR(filter_extinction_db(f, 1.5e9, 2.5e9), -10.0 * std::log10(edge), 1e-6);
}

TEST(Payload, BandNoiseVarianceMatchesFullRateNoise) {
    const double fs = 64e9, psd = 1e-22, rate = 4e9;
    ComplexWaveform w(std::vector<cplx>(std::size_t{1} << 18), fs, 0.0);
    Rng rng(9);
    add_real_noise(w.samples, psd * fs / 2.0, rng);
    const auto band = extract_band(w, 5e9, rate);
    EXPECT_NEAR(mean_power(band) / band_noise_variance(psd, rate), 1.0, 0.03);
}
