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

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rofsim/scenario/run.hpp"

namespace rofsim {

enum class ReportFormat { json, csv, both };

inline ReportFormat parse_report_format(const std::string& s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    if (s == "both") return ReportFormat::both;
    throw ValidationError("format must be json, csv or both, got '" + s + "'");
}

namespace detail {

inline nlohmann::ordered_json ber_json(const BerReport& b) {
    return {{"bit_errors", b.bit_errors}, {"total_bits", b.total_bits}, {"ber", b.ber},
            {"evm_rms", b.evm_rms}, {"passes_fec", b.passes_fec}};
}

inline nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
}

/// Shortest round-trip decimal; never locale dependent.
inline std::string csv_num(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string file_stem(const std::string& name) {
    std::string s = name;
    for (auto& ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_')) ch = '_';
    return s;
}

inline std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw SimulationError("report", "cannot write " + p.string());
    return f;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const MetricsReport& r) {
    using nlohmann::ordered_json;
    using namespace detail;
    ordered_json j;
    j["name"] = r.name;
    j["seed"] = r.seed;
    j["bits_per_point"] = r.bits_per_point;
    j["chunks"] = r.chunks;
    j["uplink_chunks"] = r.uplink_chunks;
    j["fec_threshold"] = r.fec_threshold;
    j["summary"] = {{"downlink_pass_at_top", r.downlink_pass()}, {"waterfalls_monotone", r.monotone()}};
    j["sweep_rx_power_dbm"] = r.sweep_dbm;
    ordered_json dl = ordered_json::array();
    for (const auto& d : r.downlink) {
        ordered_json w = ordered_json::array();
        for (const auto& p : d.waterfall)
            w.push_back({{"rx_power_dbm", p.rx_power_dbm}, {"bit_errors", p.errors}, {"total_bits", p.bits},
                         {"ber", p.ber}, {"evm_rms", p.evm_rms}, {"sync_losses", p.sync_losses}});
        dl.push_back({{"name", d.name}, {"kind", to_string(d.kind)}, {"placement", to_string(d.placement)},
                      {"channel", d.channel}, {"onu_filter", d.onu_filter}, {"pass_at_top", d.pass_at_top},
                      {"monotone", d.monotone}, {"waterfall", w}});
    }
    j["downlink"] = dl;
    ordered_json ul = ordered_json::array();
    for (const auto& u : r.uplink)
        ul.push_back({{"name", u.name}, {"kind", to_string(u.kind)}, {"channel", u.channel},
                      {"receiver", u.receiver}, {"metrics", ber_json(u.ber)}});
    j["uplink"] = ul;
    ordered_json onus = ordered_json::array();
    for (const auto& o : r.onus) {
        ordered_json ext = ordered_json::array();
        for (const auto& e : o.extinctions) ext.push_back({{"label", e.label}, {"extinction_db", e.extinction_db}});
        onus.push_back({{"channel", o.channel},
                        {"slot_power_dbm", o.slot_power_dbm},
                        {"carrier_ledger", {{"input_dbm", o.ledger.input_dbm},
                                            {"after_rof_dbm", o.ledger.after_rof_dbm},
                                            {"residual_dbm", o.ledger.residual_dbm},
                                            {"rof_tap_cost_db", o.ledger.rof_tap_cost_db},
                                            {"broadband_tap_cost_db", o.ledger.broadband_tap_cost_db},
                                            {"total_cost_db", o.ledger.total_cost_db}}},
                        {"downlink_centroid_hz", o.downlink_centroid_hz},
                        {"uplink_centroid_hz", o.uplink_centroid_hz},
                        {"residual_carrier_dbm", o.residual_carrier_dbm},
                        {"uplink_to_residual_db", opt_json(o.uplink_to_residual_db)},
                        {"downlink_to_carrier_db", o.downlink_to_carrier_db},
                        {"uplink_to_carrier_db", opt_json(o.uplink_to_carrier_db)},
                        {"required_extinction_db", opt_json(o.required_extinction_db)},
                        {"filter_extinction", ext}});
    }
    j["onus"] = onus;
    ordered_json pert = ordered_json::array();
    for (const auto& p : r.perturbation) pert.push_back({{"channel", p.channel}, {"perturbation_db", p.perturbation_db}});
    j["digital_perturbation"] = pert;
    ordered_json spectra = ordered_json::array();
    for (const auto& s : r.spectra) spectra.push_back({{"name", s.name}, {"rows", s.rows.size()}});
    j["spectra"] = spectra;
    j["manifest"] = r.manifest;
    return j;
}

inline void write_waterfall_csv(std::ostream& os, const DownlinkResult& d) {
    os << "rx_power_dbm,ber\n";
    for (const auto& p : d.waterfall) os << detail::csv_num(p.rx_power_dbm) << ',' << detail::csv_num(p.ber) << '\n';
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumSeries& s) {
    os << "freq_hz,psd_dbm_per_hz\n";
    for (const auto& [f, p] : s.rows) os << detail::csv_num(f) << ',' << detail::csv_num(p) << '\n';
}

/// Time samples as index,re,im.
inline void write_waveform_csv(std::ostream& os, const ComplexWaveform& w) {
    os << "index,re,im\n";
    for (std::size_t i = 0; i < w.size(); ++i)
        os << i << ',' << detail::csv_num(w.samples[i].real()) << ',' << detail::csv_num(w.samples[i].imag()) << '\n';
}

/// Writes report.json and/or waterfall_<payload>.csv and spectrum_<stage>.csv; returns the paths.
inline std::vector<std::filesystem::path> emit_reports(const MetricsReport& r, const std::filesystem::path& dir,
                                                       ReportFormat fmt) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw SimulationError("report", "cannot create output directory " + dir.string());
    std::vector<std::filesystem::path> out;
    if (fmt != ReportFormat::csv) {
        const auto p = dir / "report.json";
        auto f = detail::open_out(p);
        f << to_json(r).dump(2) << '\n';
        out.push_back(p);
    }
    if (fmt != ReportFormat::json) {
        for (const auto& d : r.downlink) {
            const auto p = dir / ("waterfall_" + detail::file_stem(d.name) + ".csv");
            auto f = detail::open_out(p);
            write_waterfall_csv(f, d);
            out.push_back(p);
        }
        for (const auto& s : r.spectra) {
            const auto p = dir / ("spectrum_" + detail::file_stem(s.name) + ".csv");
            auto f = detail::open_out(p);
            write_spectrum_csv(f, s);
            out.push_back(p);
        }
    }
    return out;
}

/// Reads a report.json back for regression comparison.
inline nlohmann::ordered_json load_report(const std::filesystem::path& p) {
    std::ifstream f(p);
    if (!f) throw ValidationError("cannot open report " + p.string());
    try {
        return nlohmann::ordered_json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("report " + p.string() + ": " + e.what());
    }
}

}  // namespace rofsim
