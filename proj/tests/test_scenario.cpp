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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rofsim/budget/plan.hpp"
#include "rofsim/scenario/devices.hpp"
#include "rofsim/scenario/report.hpp"

using namespace rofsim;
namespace fs = std::filesystem;

namespace {

const std::string kSource = ROFSIM_SOURCE_DIR;

// 30 GHz slot so the channel fits the 32 GHz grid.
const char* kC1 = "    - {id: c1, center_freq_hz: 193.4e12, slot_width_hz: 30.0e9, digital_subband_hz: 16.0e9, rof_offset_hz: 11.0e9}\n";

// One channel, one QPSK digital downlink from the OLT, 1 us chunks.
const char* kTiny = R"(
name: tiny
seed: 7
grid: {sample_rate_hz: 32.0e9, samples: 32768}
bits_per_point: 6000
wdm:
  channels:
    - {id: c1, center_freq_hz: 193.4e12, slot_width_hz: 30.0e9, digital_subband_hz: 16.0e9, rof_offset_hz: 11.0e9}
olt: {power_per_tone_dbm: 10.0}
fiber:
  feeder: {length_km: 20.0}
  distribution: {length_km: 5.0}
profiles:
  qpsk: {n_subcarriers: 32, qam_order: 4, occupied_bandwidth_hz: 2.0e9, pilot_spacing: 8, data_symbols_per_frame: 14}
payloads:
  - {name: data, kind: digital, channel: c1, placement: olt, profile: qpsk, center_hz: 3.0e9, drive_rms_volt: 0.1, onu_filter: bb}
onus:
  - channel: c1
    filters:
      - {label: bb, role: broadband, band_low_hz: 2.0e9, band_high_hz: 4.0e9, order: 4}
sweep: {points: [-30.0, -20.0, -10.0]}
)";

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto i = s.find(from);
    if (i == std::string::npos) throw std::runtime_error("test fixture lacks '" + from + "'");
    return s.replace(i, from.size(), to);
}

ScenarioConfig parse(const std::string& text) { return parse_scenario(YAML::Load(text)); }

std::string validation_message(const std::string& text) {
    try {
        parse(text).validate();
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::path(::testing::TempDir()) / ("rofsim_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(ScenarioConfig, ShippedScenarioAHasTwoChannels100GHzApart) {
    const auto c = load_config(kSource + "/scenarios/scenario_a.yaml");
    ASSERT_EQ(c.plan.channels.size(), 2u);
    EXPECT_DOUBLE_EQ(c.plan.channels[1].center_freq - c.plan.channels[0].center_freq, 100e9);
    EXPECT_DOUBLE_EQ(c.feeder.length_km, 20.0);
    EXPECT_DOUBLE_EQ(c.distribution.length_km, 5.0);
    EXPECT_GE(c.bits_per_point, 2'000'000u);
    std::size_t digital = 0, tunnels = 0;
    for (const auto& p : c.payloads) {
        if (p.direction != Direction::downlink) continue;
        if (p.placement == Placement::olt) ++digital;
        if (p.placement == Placement::tunnel_upper || p.placement == Placement::tunnel_lower) ++tunnels;
    }
    EXPECT_EQ(digital, 2u);
    EXPECT_EQ(tunnels, 4u);
    const auto m = to_json(c);
    ASSERT_EQ(m["wdm"]["channels"].size(), 2u);
    EXPECT_EQ(m["wdm"]["channels"][0]["id"], "ch1");
}

TEST(ScenarioConfig, ShippedScenarioBHasFiveRfChannels) {
    const auto c = load_config(kSource + "/scenarios/scenario_b.yaml");
    ASSERT_EQ(c.plan.channels.size(), 1u);
    std::vector<double> centres;
    for (const auto& p : c.payloads)
        if (p.spec.kind == PayloadKind::rof && p.direction == Direction::downlink) {
            EXPECT_DOUBLE_EQ(p.spec.ofdm.occupied_bandwidth, 125e6);
            centres.push_back(p.spec.center_hz);
        }
    ASSERT_EQ(centres.size(), 5u);
    std::sort(centres.begin(), centres.end());
    for (std::size_t i = 1; i < centres.size(); ++i) EXPECT_NEAR(centres[i] - centres[i - 1], 250e6, 1e3);
}

TEST(ScenarioConfig, EmptyFileListsMissingSections) {
    const auto path = temp_dir("empty") / "empty.yaml";
    std::ofstream(path) << "";
    try {
        load_config(path.string());
        FAIL() << "empty file accepted";
    } catch (const ValidationError& e) {
        const std::string m = e.what();
        for (const char* s : {"seed", "grid", "wdm", "profiles", "payloads", "onus", "sweep"})
            EXPECT_NE(m.find(s), std::string::npos) << s << " not listed in: " << m;
    }
}

TEST(ScenarioConfig, MissingSeedIsRejected) {
    const auto m = validation_message(replace(kTiny, "seed: 7\n", ""));
    EXPECT_NE(m.find("seed"), std::string::npos) << m;
}

TEST(ScenarioConfig, OverlappingSlotsNamed) {
    const auto m = validation_message(replace(kTiny, kC1,
                                              kC1 + replace(kC1, "c1, center_freq_hz: 193.4e12", "c2, center_freq_hz: 193.42e12")));
    EXPECT_NE(m.find("c1"), std::string::npos) << m;
    EXPECT_NE(m.find("c2"), std::string::npos) << m;
}

TEST(ScenarioConfig, SlotBeyondGridRejected) {
    const auto m = validation_message(replace(kTiny, "slot_width_hz: 30.0e9", "slot_width_hz: 40.0e9"));
    EXPECT_NE(m.find("c1"), std::string::npos) << m;
    EXPECT_NE(m.find("grid"), std::string::npos) << m;
}

TEST(ScenarioConfig, UnknownFieldReportsLine) {
    const auto m = validation_message(replace(kTiny, "olt: {power_per_tone_dbm: 10.0}",
                                              "olt: {power_per_tone_dbm: 10.0, laser_color: red}"));
    EXPECT_NE(m.find("laser_color"), std::string::npos) << m;
    EXPECT_NE(m.find("line 9"), std::string::npos) << m;
}

TEST(ScenarioConfig, PayloadReferencesChecked) {
    EXPECT_NE(validation_message(replace(kTiny, "onu_filter: bb}", "onu_filter: nope}")).find("nope"),
              std::string::npos);
    EXPECT_NE(validation_message(replace(kTiny, "profile: qpsk,", "profile: missing,")).find("missing"),
              std::string::npos);
    EXPECT_NE(validation_message(replace(kTiny, "placement: olt,", "placement: tunnel_upper,")).find("data"),
              std::string::npos);
    EXPECT_FALSE(validation_message(replace(kTiny, "placement: olt,", "direction: uplink, placement: olt,")).empty());
}

TEST(ScenarioConfig, SweepMustUseReceivedPower) {
    EXPECT_FALSE(validation_message(replace(kTiny, "sweep: {points:", "sweep: {axis: launch_dbm, points:")).empty());
}

TEST(ScenarioConfig, RangeSweepExpands) {
    const auto c = parse(replace(kTiny, "sweep: {points: [-30.0, -20.0, -10.0]}", "sweep: {start: -6, stop: 0, step: 2}"));
    EXPECT_EQ(c.sweep.points, (std::vector<double>{-6.0, -4.0, -2.0, 0.0}));
}

TEST(ScenarioConfig, ManifestEchoesResolvedDefaults) {
    const auto m = to_json(parse(kTiny));
    EXPECT_EQ(m["seed"], 7);
    EXPECT_EQ(m["full_bits_per_point"], 10'000'000);
    EXPECT_EQ(m["uplink_chunks"], 4);
    EXPECT_TRUE(m.contains("smart_edge"));
    EXPECT_TRUE(m["olt"].contains("ring"));
    EXPECT_DOUBLE_EQ(m["fiber"]["feeder"]["dispersion_ps_nm_km"].get<double>(), 17.0);
    EXPECT_TRUE(m["central_office"].contains("pd"));
}

TEST(ScenarioConfig, CenterSnapsToChunkGrid) {
    const auto c = parse(replace(kTiny, "center_hz: 3.0e9", "center_hz: 3.00001e9"));
    const auto& p = c.payloads.at(0).spec;
    EXPECT_TRUE(c.grid.on_grid(p.carrier_hz()));
    EXPECT_NEAR(p.center_hz, 3.0e9, c.grid.bin_width());
}

TEST(RunScenario, TinyConfigPassesAndIsDeterministic) {
    const auto c = parse(kTiny);
    const auto a = run_scenario(c);
    const auto b = run_scenario(c);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    ASSERT_EQ(a.downlink.size(), 1u);
    EXPECT_TRUE(a.downlink[0].pass_at_top);
    EXPECT_GE(a.downlink[0].waterfall.back().bits, c.bits_per_point);

    auto c2 = c;
    c2.seed = 8;
    EXPECT_NE(to_json(run_scenario(c2)).dump(), to_json(a).dump());
}

TEST(RunScenario, FullFlagUsesFullBitCount) {
    auto c = parse(kTiny);
    c.full_bits_per_point = 12000;
    c.sweep.points = {-10.0};
    const auto r = run_scenario(c, RunOptions{true, false});
    EXPECT_EQ(r.bits_per_point, 12000u);
    EXPECT_GE(r.downlink[0].waterfall[0].bits, 12000u);
    EXPECT_TRUE(r.spectra.empty());
}

TEST(RunScenario, StageTaggedErrors) {
    try {
        at_stage("feeder", [] { return propagate_fiber(ComplexWaveform({}, 1e9, 0.0), FiberParams{}); });
        FAIL();
    } catch (const SimulationError& e) {
        EXPECT_EQ(e.stage(), "feeder");
        EXPECT_NE(std::string(e.what()).find("[feeder]"), std::string::npos);
    }
    // An uplink that needs more residual carrier than the ONU keeps fails in remodulation.
    auto text = replace(kTiny, "  - {name: data,",
                        "  - {name: up, kind: digital, direction: uplink, channel: c1, profile: qpsk, "
                        "center_hz: 3.0e9, drive_rms_volt: 0.1}\n  - {name: data,");
    text = replace(text, "    filters:\n", "    uplink: {min_residual_carrier_dbm: 20.0}\n    filters:\n");
    try {
        run_scenario(parse(text));
        FAIL();
    } catch (const SimulationError& e) {
        EXPECT_EQ(e.stage(), "onu_remodulate") << e.what();
    }
}

TEST(RunScenario, UplinkReachesCentralOffice) {
    auto text = replace(kTiny, "  - {name: data,",
                        "  - {name: up, kind: digital, direction: uplink, channel: c1, profile: qpsk, "
                        "center_hz: 6.0e9, drive_rms_volt: 0.2}\n  - {name: data,");
    text = replace(text, "olt: {power_per_tone_dbm: 10.0}", "olt: {power_per_tone_dbm: 14.0}");
    text = replace(text, "bits_per_point: 6000", "bits_per_point: 6000\nuplink_chunks: 2");
    const auto r = run_scenario(parse(text));
    ASSERT_EQ(r.uplink.size(), 1u);
    EXPECT_EQ(r.uplink[0].receiver, "central_office");
    EXPECT_LT(r.uplink[0].ber.ber, kDefaultFecThreshold);
    ASSERT_EQ(r.onus.size(), 1u);
    ASSERT_TRUE(r.onus[0].uplink_to_residual_db.has_value());
    EXPECT_LT(r.onus[0].uplink_centroid_hz, 0.0);
    EXPECT_GT(r.onus[0].downlink_centroid_hz, 0.0);
}

// BER from an AWGN-limited link must fall with received power, within the binomial
// spread of the estimate at 1e6 bits per point.
TEST(RunScenario, AwgnWaterfallIsMonotone) {
    auto c = parse(replace(replace(kTiny, "samples: 32768", "samples: 262144"), "qam_order: 4", "qam_order: 16"));
    c.bits_per_point = 1'000'000;
    c.sweep.points = {-22.0, -20.0, -18.0, -16.0, -14.0};
    const auto r = run_scenario(c, RunOptions{false, false});
    const auto& w = r.downlink.at(0).waterfall;
    ASSERT_EQ(w.size(), 5u);
    EXPECT_GT(w.front().ber, 1e-3);
    for (std::size_t i = 1; i < w.size(); ++i) {
        EXPECT_GE(w[i].bits, 1'000'000u);
        const double p = std::max(w[i - 1].ber, 1.0 / static_cast<double>(w[i - 1].bits));
        EXPECT_LE(w[i].ber, w[i - 1].ber + 3.0 * std::sqrt(p / static_cast<double>(w[i].bits)))
            << "at " << w[i].rx_power_dbm << " dBm";
    }
    EXPECT_TRUE(waterfall_monotone(w));
}

TEST(Reports, EmptySweepGivesHeaderOnlyCsv) {
    auto c = parse(kTiny);
    c.sweep.points.clear();
    const auto r = run_scenario(c, RunOptions{false, false});
    ASSERT_EQ(r.downlink.size(), 1u);
    EXPECT_TRUE(r.downlink[0].waterfall.empty());
    const auto dir = temp_dir("empty_sweep");
    emit_reports(r, dir, ReportFormat::csv);
    EXPECT_EQ(slurp(dir / "waterfall_data.csv"), "rx_power_dbm,ber\n");
}

TEST(Reports, JsonRoundTripsAndCsvHeaders) {
    const auto r = run_scenario(parse(kTiny));
    const auto dir = temp_dir("roundtrip");
    const auto files = emit_reports(r, dir, ReportFormat::both);
    EXPECT_EQ(load_report(dir / "report.json"), to_json(r));

    std::vector<std::string> keys;
    const auto j = load_report(dir / "report.json");
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys.front(), "name");
    EXPECT_EQ(keys.back(), "manifest");

    const auto wf = slurp(dir / "waterfall_data.csv");
    EXPECT_EQ(wf.substr(0, wf.find('\n')), "rx_power_dbm,ber");
    EXPECT_EQ(std::count(wf.begin(), wf.end(), '\n'), 4);
    const auto sp = slurp(dir / "spectrum_onu_in.csv");
    EXPECT_EQ(sp.substr(0, sp.find('\n')), "freq_hz,psd_dbm_per_hz");
    EXPECT_EQ(sp.find(','), sp.rfind(',', sp.find('\n')));
    EXPECT_GE(files.size(), 3u);
}

TEST(Reports, UnwritablePathIsReported) {
    const auto r = run_scenario(parse(replace(kTiny, "sweep: {points: [-30.0, -20.0, -10.0]}", "sweep: {points: []}")),
                                RunOptions{false, false});
    const auto blocker = temp_dir("blocked") / "file";
    std::ofstream(blocker) << "x";
    try {
        emit_reports(r, blocker / "sub", ReportFormat::json);
        FAIL();
    } catch (const SimulationError& e) {
        EXPECT_EQ(e.stage(), "report");
    }
}

TEST(Reports, FormatNames) {
    EXPECT_EQ(parse_report_format("json"), ReportFormat::json);
    EXPECT_EQ(parse_report_format("csv"), ReportFormat::csv);
    EXPECT_EQ(parse_report_format("both"), ReportFormat::both);
    EXPECT_THROW(parse_report_format("xml"), ValidationError);
}

TEST(Devices, ShippedSweepIsPassive) {
    const auto c = parse_devices(YAML::LoadFile(kSource + "/scenarios/devices.yaml"));
    ASSERT_EQ(c.devices.size(), 3u);
    for (const auto& d : c.devices) {
        const auto rows = sweep_device(d, c.start_hz, c.stop_hz, c.points);
        ASSERT_EQ(rows.size(), c.points);
        for (const auto& r : rows) {
            const double t = std::pow(10.0, r.through_db / 10.0);
            const double dr = std::isfinite(r.drop_db) ? std::pow(10.0, r.drop_db / 10.0) : 0.0;
            EXPECT_LE(t + dr, 1.0 + 1e-9) << d.name << " at " << r.freq_hz;
        }
    }
    const auto dir = temp_dir("devices");
    const auto files = export_device_sweeps(c, dir);
    ASSERT_EQ(files.size(), 3u);
    const auto csv = slurp(files[0]);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "freq_hz,through_db,drop_db,phase_rad");
}

TEST(Devices, UnknownTypeRejected) {
    EXPECT_THROW(parse_devices(YAML::Load("devices:\n  - {name: x, type: prism}\n")), ValidationError);
    EXPECT_THROW(parse_devices(YAML::Load("sweep: {points: 3}\n")), ValidationError);
}

TEST(BudgetPlan, ShippedPlanEvaluates) {
    const auto plan = load_budget_plan(kSource + "/scenarios/budget.yaml");
    const auto r = run_budget(plan);
    ASSERT_EQ(r.json["latency"].size(), 3u);
    EXPECT_DOUBLE_EQ(r.json["latency"][0]["total_us"].get<double>(), 150.0);
    EXPECT_TRUE(r.json["latency"][0]["pass"].get<bool>());
    // 2 km differential between the CoMP RUs breaks 1.5 us sync without compensation.
    ASSERT_EQ(r.json["comp"].size(), 1u);
    EXPECT_FALSE(r.json["comp"][0]["pass"].get<bool>());
    EXPECT_FALSE(r.pass);
    ASSERT_EQ(r.json["fronthaul"].size(), 3u);
    EXPECT_NE(r.text.find("LTE 20 MHz"), std::string::npos);
}

#ifdef ROFSIM_CLI
namespace {
int cli(const std::string& args) {
    const int s = std::system((std::string(ROFSIM_CLI) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}
}  // namespace

TEST(Cli, ExitCodes) {
    const auto dir = temp_dir("cli");
    const auto good = dir / "tiny.yaml";
    std::ofstream(good) << kTiny;
    EXPECT_EQ(cli("run --config " + good.string() + " --out " + (dir / "o").string() + " --format both"), 0);
    EXPECT_TRUE(fs::exists(dir / "o" / "report.json"));
    EXPECT_TRUE(fs::exists(dir / "o" / "waterfall_data.csv"));

    EXPECT_EQ(cli("run --config " + (dir / "absent.yaml").string()), 2);
    EXPECT_EQ(cli("run"), 2);
    EXPECT_EQ(cli("run --config " + good.string() + " --format xml"), 2);

    const auto bad = dir / "runtime.yaml";
    std::ofstream(bad) << replace(replace(kTiny, "  - {name: data,",
                                          "  - {name: up, kind: digital, direction: uplink, channel: c1, profile: qpsk, "
                                          "center_hz: 3.0e9, drive_rms_volt: 0.1}\n  - {name: data,"),
                                  "    filters:\n", "    uplink: {min_residual_carrier_dbm: 20.0}\n    filters:\n");
    EXPECT_EQ(cli("run --config " + bad.string() + " --out " + (dir / "b").string()), 3);

    EXPECT_EQ(cli("sweep --config " + good.string() + " --points -12,-8 --out " + (dir / "s").string()), 0);
    const auto j = load_report(dir / "s" / "report.json");
    EXPECT_EQ(j["sweep_rx_power_dbm"].size(), 2u);

    EXPECT_EQ(cli("run --config " + good.string() + " --seed 9 --out " + (dir / "seed").string()), 0);
    EXPECT_EQ(load_report(dir / "seed" / "report.json")["seed"], 9);
}
#endif
