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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rofsim/rofsim.hpp"

using namespace rofsim;

namespace {

const std::string kSource = ROFSIM_SOURCE_DIR;
constexpr double kRef = 193.4e12;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double db(double x) { return 10.0 * std::log10(x); }

ComplexWaveform tone(double f, double power, std::size_t n, double fs) {
    ComplexWaveform w(std::vector<cplx>(n), fs, kRef);
    for (std::size_t i = 0; i < n; ++i)
        w.samples[i] = std::polar(std::sqrt(power), 2.0 * std::numbers::pi * f * static_cast<double>(i) / fs);
    return w;
}

// Direct single-bin DFT, independent of the FFT path.
double line_power(const ComplexWaveform& w, double f) {
    cplx acc = 0.0;
    for (std::size_t n = 0; n < w.size(); ++n)
        acc += w.samples[n] * std::polar(1.0, -2.0 * std::numbers::pi * f * static_cast<double>(n) / w.sample_rate);
    return std::norm(acc / static_cast<double>(w.size()));
}

ComplexWaveform cosine(double amp, double f, std::size_t n, double fs, double phase = 0.0) {
    ComplexWaveform d(std::vector<cplx>(n), fs, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        d.samples[i] = {amp * std::cos(2.0 * std::numbers::pi * f * static_cast<double>(i) / fs + phase), 0.0};
    return d;
}

Node make_node(std::string id, NodeKind k) {
    Node n;
    n.id = std::move(id);
    n.kind = k;
    return n;
}

Link make_link(std::string a, std::string b, double km) {
    Link l;
    l.from = std::move(a);
    l.to = std::move(b);
    l.fiber.length_km = km;
    return l;
}

// 1. Round-trip delay anchors.
Outcome latency_anchors() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const double d20 = propagation_delay(20.0, true);
    const double d100 = propagation_delay(100.0, true);
    const double elapsed = seconds_since(t0);
    o.check(d20 == 200.0, "20 km round trip");
    o.check(d100 == 1000.0, "100 km round trip");
    o.check(elapsed < 1.0, "runtime");
    o.detail << "20 km RT " << d20 << " us, 100 km RT " << d100 << " us, " << elapsed * 1e3 << " ms";
    return o;
}

// 2. CPRI and analog RoF bandwidth expansion.
Outcome cpri_expansion() {
    Outcome o;
    const FronthaulSpec* lte20 = nullptr;
    const auto cpri = cpri_catalog();
    for (const auto& s : cpri)
        if (s.name == "LTE 20 MHz") lte20 = &s;
    o.check(lte20 != nullptr, "LTE 20 MHz preset");
    if (!lte20) return o;
    // 2 (I/Q) x 15 bits x 30.72 MS/s, 16/15 control words, 10b/8b line code, over 20 MHz.
    const double oracle = 2.0 * 15.0 * 30.72e6 * (16.0 / 15.0) * (10.0 / 8.0) / 20e6;
    const double x = fronthaul_dimension(*lte20).expansion_factor;
    o.check(x >= 10.0, "CPRI expansion >= 10");
    o.check(std::abs(x - oracle) < 1e-9, "CPRI formula");
    double worst_arof = 0.0;
    for (const auto& s : arof_catalog()) {
        if (s.guard && *s.guard <= 0.2) worst_arof = std::max(worst_arof, fronthaul_dimension(s).expansion_factor);
    }
    o.check(worst_arof > 0.0 && worst_arof <= 1.2, "ARoF expansion <= 1.2");
    o.detail << "LTE 20 MHz x" << x << " (oracle " << oracle << "), worst ARoF x" << worst_arof;
    return o;
}

// 3. CoMP latency and synchronization rules.
Outcome comp_feasibility_rules() {
    Outcome o;
    const Topology single({make_node("co", NodeKind::central_office), make_node("ru", NodeKind::ru)},
                          {make_link("co", "ru", 20.0)});
    const auto one = comp_feasibility(single, {"ru"}, "co");
    o.check(one.pass && one.rus.at(0).one_way_us == 100.0, "20 km RU at 100 us passes 150 us");

    auto tree = [](bool comp) {
        auto se = make_node("se", NodeKind::smart_edge);
        se.sync_compensation = comp;
        return Topology({make_node("co", NodeKind::central_office), se, make_node("ru1", NodeKind::ru),
                         make_node("ru2", NodeKind::ru)},
                        {make_link("co", "se", 20.0), make_link("se", "ru1", 10.0), make_link("se", "ru2", 12.0)});
    };
    const auto raw = comp_feasibility(tree(false), {"ru1", "ru2"}, "se");
    const auto fixed = comp_feasibility(tree(true), {"ru1", "ru2"}, "se");
    o.check(!raw.pass && !raw.sync_ok && raw.pairs.size() == 1 && raw.pairs[0].differential_us == 10.0,
            "2 km differential fails +-1.5 us");
    o.check(fixed.pass, "compensated pair passes");
    o.detail << "one-way " << one.rus.at(0).one_way_us << " us; 2 km differential "
             << (raw.pairs.empty() ? 0.0 : raw.pairs[0].differential_us) << " us "
             << (raw.sync_ok ? "in sync" : "out of sync") << ", compensated " << (fixed.pass ? "ok" : "fails");
    return o;
}

// Upper and lower first-order sideband powers of a tone through the IQ ring modulator.
std::pair<double, double> ssb_lines(double branch_phase) {
    const double fs = 64e9, fm = 5e9;
    const std::size_t n = 4096;
    auto ring = make_critical_ring(kRef, 10e9, 1e12, 1e9);
    ring.bias_volt = 5.0;
    const IqMrmConfig cfg{ring, ring, branch_phase, Sideband::upper};
    const auto out = iq_mrm_ssb(tone(0.0, 1e-3, n, fs), cfg, cosine(0.3, fm, n, fs),
                                cosine(0.3, fm, n, fs, -std::numbers::pi / 2.0));
    return {line_power(out, fm), line_power(out, -fm)};
}

double rf_line_after(const ComplexWaveform& field, double km, double f) {
    FiberParams fiber;
    fiber.length_km = km;
    fiber.atten_db_per_km = 0.0;
    return line_power(photodetect_noiseless(propagate_fiber(field, fiber), 1.0), f);
}

// 4. Single-sideband quality and dispersion fading.
Outcome ssb_quality() {
    Outcome o;
    const auto [up, low] = ssb_lines(std::numbers::pi / 2.0);
    const double irr = db(up / low);
    o.check(irr >= 30.0, "ideal image rejection >= 30 dB");

    const double delta = 10.0 * std::numbers::pi / 180.0;
    const double oracle = db((1.0 + std::cos(delta)) / (1.0 - std::cos(delta)));
    const auto [up10, low10] = ssb_lines(std::numbers::pi / 2.0 + delta);
    const double irr10 = db(up10 / low10);
    o.check(std::abs(irr10 - oracle) <= 1.0, "10 deg image rejection within 1 dB of oracle");

    const double fs = 64e9;
    const std::size_t n = 4096;
    double worst = 1e300, f_null = 0.0, ssb_dip = 0.0;
    for (double f = 1e9; f <= 20e9; f += 62.5e6) {
        auto dsb = add(tone(0.0, 1e-3, n, fs), tone(f, 1e-5, n, fs));
        const auto ssb = dsb;
        dsb = add(dsb, tone(-f, 1e-5, n, fs));
        const double r_dsb = rf_line_after(dsb, 20.0, f) / rf_line_after(dsb, 0.0, f);
        const double r_ssb = rf_line_after(ssb, 20.0, f) / rf_line_after(ssb, 0.0, f);
        if (r_dsb < worst) worst = r_dsb, f_null = f;
        ssb_dip = std::max(ssb_dip, -db(r_ssb));
    }
    // cos^2(pi lambda^2 D L f^2 / c) fades first where the argument reaches pi/2.
    const double lambda = 1550e-9, D = 17e-6, L = 20e3;
    const double null_oracle = std::sqrt(constants::speed_of_light / (2.0 * lambda * lambda * D * L));
    o.check(std::abs(f_null - 13.6e9) <= 0.5e9, "DSB null at 13.6 +- 0.5 GHz");
    o.check(std::abs(f_null - null_oracle) <= 62.5e6, "DSB null matches analytic fading");
    o.check(ssb_dip < 1.0, "SSB dip < 1 dB");
    o.detail << "IRR " << irr << " dB; 10 deg " << irr10 << " dB (oracle " << oracle << "); DSB null "
             << f_null / 1e9 << " GHz (oracle " << null_oracle / 1e9 << "), SSB dip " << ssb_dip << " dB";
    return o;
}

// 5. Clock-driven subcarrier generation.
Outcome subcarrier_generation() {
    Outcome o;
    const double fs = 128e9;
    const std::size_t n = 4096;
    const double bin = fs / static_cast<double>(n);
    auto ring = make_critical_ring(kRef, 10e9, 1e12, 1e9);
    ring.bias_volt = null_bias_volt(ring, kRef);
    for (double fc : {10e9, 15e9, 20e9}) {
        const auto out = generate_subcarriers(tone(0.0, 1e-3, n, fs), ring, fc);
        const PowerSpectrum ps(out);
        double best_pos = 0.0, best_neg = 0.0, f_pos = 0.0, f_neg = 0.0;
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const double f = ps.frequency(k);
            if (f > bin && ps.power(k) > best_pos) best_pos = ps.power(k), f_pos = f;
            if (f < -bin && ps.power(k) > best_neg) best_neg = ps.power(k), f_neg = f;
        }
        const double carrier = line_power(out, 0.0);
        const double sup = std::min(db(line_power(out, fc) / carrier), db(line_power(out, -fc) / carrier));
        const std::string tag = std::to_string(static_cast<int>(fc / 1e9)) + " GHz";
        o.check(std::abs(f_pos - fc) <= bin && std::abs(f_neg + fc) <= bin, tag + " tones at +-clock");
        o.check(sup >= 20.0, tag + " carrier suppression >= 20 dB");
        o.detail << tag << ": +" << f_pos / 1e9 << "/" << f_neg / 1e9 << " GHz, suppression " << sup << " dB; ";
    }
    return o;
}

// 6. Scenario A: two channels, digital plus two tunnels each, 20 + 5 km.
Outcome scenario_a() {
    Outcome o;
    const auto cfg = load_config(kSource + "/scenarios/scenario_a.yaml");
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_scenario(cfg, RunOptions{false, false});
    const double elapsed = seconds_since(t0);
    o.check(cfg.plan.channels.size() == 2 &&
                cfg.plan.channels[1].center_freq - cfg.plan.channels[0].center_freq == 100e9,
            "two channels at 100 GHz");
    o.check(cfg.feeder.length_km == 20.0 && cfg.distribution.length_km == 5.0, "20 + 5 km");
    o.check(r.downlink.size() == 6, "six downlink signals");
    std::uint64_t min_bits = ~0ull;
    double worst_top = 0.0;
    for (const auto& d : r.downlink) {
        for (const auto& p : d.waterfall) min_bits = std::min(min_bits, p.bits);
        if (!d.waterfall.empty()) worst_top = std::max(worst_top, d.waterfall.back().ber);
        o.check(d.pass_at_top, d.name + " below FEC at top");
        o.check(d.monotone, d.name + " monotone");
    }
    o.check(min_bits >= 2'000'000, ">= 2e6 bits per point");
    o.check(elapsed < 600.0, "runtime < 10 min");
    o.detail << r.downlink.size() << " signals, worst BER at " << (r.sweep_dbm.empty() ? 0.0 : r.sweep_dbm.back())
             << " dBm " << worst_top << ", min bits/point " << min_bits << ", " << elapsed << " s";
    return o;
}

// 7. Scenario B: broadband plus five RF channels, uplink remodulation.
Outcome scenario_b() {
    Outcome o;
    const auto cfg = load_config(kSource + "/scenarios/scenario_b.yaml");
    const auto r = run_scenario(cfg, RunOptions{false, false});
    std::size_t rf = 0, broadband = 0;
    double worst_top = 0.0;
    for (const auto& d : r.downlink) {
        const auto* p = &cfg.payloads.front();
        for (const auto& q : cfg.payloads)
            if (q.spec.name == d.name) p = &q;
        if (p->spec.kind == PayloadKind::rof && p->spec.ofdm.occupied_bandwidth == 125e6) ++rf;
        if (p->spec.kind == PayloadKind::digital) ++broadband;
        if (!d.waterfall.empty()) worst_top = std::max(worst_top, d.waterfall.back().ber);
        o.check(d.pass_at_top, d.name + " below FEC");
    }
    o.check(rf == 5 && broadband == 1, "broadband plus five 125 MHz RF channels");
    o.check(!r.onus.empty(), "ONU result");
    if (r.onus.empty()) return o;
    const auto& onu = r.onus[0];
    const double ratio = onu.uplink_to_residual_db.value_or(-1e9);
    o.check(ratio >= 13.0, "uplink >= 13 dB above residual downlink");
    o.check(std::abs(onu.ledger.rof_tap_cost_db - 4.0) <= 1.0, "RoF tap cost 4 +- 1 dB");
    bool uplink_ok = !r.uplink.empty();
    for (const auto& u : r.uplink) uplink_ok = uplink_ok && u.ber.passes_fec;
    o.check(uplink_ok, "remodulated uplink detected below FEC");
    o.detail << rf << " RF + " << broadband << " broadband, worst BER " << worst_top << ", uplink/residual "
             << ratio << " dB, RoF tap " << onu.ledger.rof_tap_cost_db << " dB, broadband tap "
             << onu.ledger.broadband_tap_cost_db << " dB, uplink BER "
             << (r.uplink.empty() ? 1.0 : r.uplink[0].ber.ber);
    return o;
}

// 8a. |through|^2 + |drop|^2 <= 1 for every passive element.
bool passivity(std::ostringstream& msg) {
    Rng rng(801);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int dev = 0; dev < 20; ++dev) {
        RingParams ring;
        ring.resonance_freq = kRef + 1e9 * (u(rng) - 0.5) * 200.0;
        ring.fsr = 1e11 + 2e12 * u(rng);
        ring.self_coupling_t1 = 0.3 + 0.7 * u(rng);
        ring.self_coupling_t2 = dev % 2 ? 1.0 : 0.3 + 0.7 * u(rng);
        ring.roundtrip_amplitude_a = dev % 3 ? 0.3 + 0.7 * u(rng) : 1.0;
        DropFilterSpec filter{kRef + 1e10 * (u(rng) - 0.5), 1e9 + 3e10 * u(rng), 1 + dev % 6, dev % 4 ? 0.0 : 0.7};
        FiberParams fiber;
        fiber.length_km = 100.0 * u(rng);
        for (int t = 0; t < 1000; ++t) {
            const double f = kRef + 5e11 * (u(rng) - 0.5);
            const auto r = ring_response(ring, f);
            const auto d = drop_filter_response(filter, f);
            const double h = std::abs(dispersion_response(fiber, f - kRef)) * db_to_amplitude(-fiber.loss_db());
            worst = std::max({worst, std::norm(r.through) + std::norm(r.drop), std::norm(d.through) + std::norm(d.drop),
                              h * h});
        }
    }
    msg << "passivity max " << worst << "; ";
    return worst <= 1.0 + 1e-12;
}

// 8b. The ring response repeats every FSR. Integer-Hz arguments keep f + FSR exact.
bool fsr_periodicity(std::ostringstream& msg) {
    Rng rng(802);
    std::uniform_int_distribution<long long> fsr_hz(100'000'000'000LL, 2'000'000'000'000LL);
    std::uniform_int_distribution<long long> off_hz(-300'000'000'000LL, 300'000'000'000LL);
    std::uniform_real_distribution<double> u(0.3, 0.98);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        RingParams ring;
        ring.resonance_freq = 193'400'000'000'000.0;
        ring.fsr = static_cast<double>(fsr_hz(rng));
        ring.self_coupling_t1 = u(rng);
        ring.self_coupling_t2 = t % 2 ? 1.0 : u(rng);
        ring.roundtrip_amplitude_a = u(rng);
        const double f = ring.resonance_freq + static_cast<double>(off_hz(rng));
        const auto a = ring_response(ring, f), b = ring_response(ring, f + ring.fsr);
        worst = std::max({worst, std::abs(a.through - b.through), std::abs(a.drop * a.drop - b.drop * b.drop)});
    }
    msg << "FSR max diff " << worst << "; ";
    return worst <= 1e-12;
}

// 8c. Dispersion is all-pass and two spans compose into one.
bool dispersion_properties(std::ostringstream& msg) {
    Rng rng(803);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_mag = 0.0, worst_comp = 0.0;
    for (int t = 0; t < 1000; ++t) {
        FiberParams a, b, ab;
        a.length_km = 50.0 * u(rng);
        b.length_km = 50.0 * u(rng);
        ab.length_km = a.length_km + b.length_km;
        const double f = 1e11 * (u(rng) - 0.5);
        worst_mag = std::max(worst_mag, std::abs(std::abs(dispersion_response(a, f)) - 1.0));
        worst_comp = std::max(worst_comp,
                              std::abs(dispersion_response(a, f) * dispersion_response(b, f) - dispersion_response(ab, f)));
    }
    for (int t = 0; t < 10; ++t) {
        FiberParams a, b, ab;
        a.length_km = 30.0 * u(rng);
        b.length_km = 30.0 * u(rng);
        ab.length_km = a.length_km + b.length_km;
        ComplexWaveform w(std::vector<cplx>(2048), 128e9, kRef);
        Rng nr(derive_seed(803, t));
        add_complex_noise(w.samples, 1e-3, nr);
        const auto two = propagate_fiber(propagate_fiber(w, a), b), one = propagate_fiber(w, ab);
        for (std::size_t i = 0; i < w.size(); ++i)
            worst_comp = std::max(worst_comp, std::abs(two.samples[i] - one.samples[i]) / std::sqrt(1e-3));
    }
    msg << "dispersion |H|-1 " << worst_mag << ", composition " << worst_comp << "; ";
    return worst_mag <= 1e-9 && worst_comp <= 1e-9;
}

// 8d. OFDM over AWGN against the closed-form Gray-coded QAM bit error rate.
bool monte_carlo_ber(std::ostringstream& msg) {
    bool ok = true;
    struct Case {
        int qam;
        double ebn0_db;
        std::uint64_t bits;
    };
    for (const Case c : {Case{4, 6.0, 400'000}, Case{4, 9.5, 4'000'000}, Case{16, 10.0, 1'000'000}}) {
        OfdmConfig cfg;
        cfg.n_subcarriers = 64;
        cfg.qam_order = c.qam;
        cfg.occupied_bandwidth = 1e9;
        cfg.pilot_spacing = 8;
        cfg.data_symbols_per_frame = 32;
        cfg.seed = 42;
        const double esn0 = db_to_linear(c.ebn0_db) * std::log2(static_cast<double>(c.qam));
        const double variance = static_cast<double>(cfg.fft_size()) / static_cast<double>(cfg.n_subcarriers) / esn0;
        BerAccumulator acc;
        for (std::uint64_t batch = 0; acc.report().total_bits < c.bits; ++batch) {
            const auto bits = random_bits(200 * cfg.bits_per_frame(), derive_seed(804, c.qam, batch));
            auto w = generate_ofdm(cfg, bits);
            Rng rng(derive_seed(805, c.qam, batch));
            add_complex_noise(w.samples, variance, rng);
            const auto r = demodulate_ofdm(cfg, w);
            const auto rep = ber_evm_metrics(bits, r.bits);
            acc.add(rep.bit_errors, rep.total_bits, r.evm_rms, r.data_symbols);
        }
        // Gray-coded square M-QAM: (4/k)(1 - 1/sqrt M) Q(sqrt(3 k Eb/N0 / (M - 1))), Q via erfc.
        const double k = std::log2(static_cast<double>(c.qam)), m = c.qam;
        const double arg = std::sqrt(3.0 * k * db_to_linear(c.ebn0_db) / (m - 1.0));
        const double oracle = 4.0 / k * (1.0 - 1.0 / std::sqrt(m)) * 0.5 * std::erfc(arg / std::sqrt(2.0));
        const double measured = acc.report().ber;
        ok = ok && oracle >= 1e-5 * 0.99 && measured > oracle / 2.0 && measured < oracle * 2.0;
        msg << c.qam << "-QAM@" << c.ebn0_db << "dB " << measured << "/" << oracle << "; ";
    }
    return ok;
}

// 8e. Same seed, same bytes.
bool seed_determinism(std::ostringstream& msg) {
    const char* text = R"(
name: determinism
seed: 11
grid: {sample_rate_hz: 32.0e9, samples: 32768}
bits_per_point: 6000
wdm: {channels: [{id: c1, center_freq_hz: 193.4e12, slot_width_hz: 30.0e9, digital_subband_hz: 16.0e9, rof_offset_hz: 11.0e9}]}
profiles:
  qpsk: {n_subcarriers: 32, qam_order: 4, occupied_bandwidth_hz: 2.0e9, pilot_spacing: 8, data_symbols_per_frame: 14}
payloads:
  - {name: d, kind: digital, channel: c1, placement: olt, profile: qpsk, center_hz: 3.0e9, drive_rms_volt: 0.1, onu_filter: bb}
  - {name: u, kind: digital, direction: uplink, channel: c1, profile: qpsk, center_hz: 6.0e9, drive_rms_volt: 0.2}
onus:
  - channel: c1
    filters: [{label: bb, role: broadband, band_low_hz: 2.0e9, band_high_hz: 4.0e9, order: 4}]
sweep: {points: [-20.0, -10.0]}
uplink_chunks: 1
)";
    const auto cfg = parse_scenario(YAML::Load(text));
    const auto a = to_json(run_scenario(cfg)).dump(), b = to_json(run_scenario(cfg)).dump();
    PdParams pd;
    pd.seed = 5;
    const auto w = tone(1e9, 1e-3, 1024, 32e9);
    const auto p1 = photodetect(w, pd), p2 = photodetect(w, pd);
    const bool pd_same = std::memcmp(p1.samples.data(), p2.samples.data(), p1.size() * sizeof(cplx)) == 0;
    msg << "report " << a.size() << " bytes " << (a == b ? "identical" : "differs") << "; ";
    return a == b && pd_same;
}

Outcome property_suites() {
    Outcome o;
    o.check(passivity(o.detail), "passivity");
    o.check(fsr_periodicity(o.detail), "FSR periodicity");
    o.check(dispersion_properties(o.detail), "dispersion");
    o.check(monte_carlo_ber(o.detail), "Monte-Carlo BER");
    o.check(seed_determinism(o.detail), "seed determinism");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 latency anchors", latency_anchors},
        {"2 CPRI expansion", cpri_expansion},
        {"3 CoMP feasibility", comp_feasibility_rules},
        {"4 SSB quality", ssb_quality},
        {"5 subcarrier generation", subcarrier_generation},
        {"6 scenario A", scenario_a},
        {"7 scenario B", scenario_b},
        {"8 property suites", property_suites},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        bool pass = false;
        std::string detail;
        try {
            const auto o = fn();
            pass = o.pass;
            detail = o.detail.str();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!pass) ++failures;
        std::printf("%s  %-24s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
