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

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "rofsim/core/yaml.hpp"
#include "rofsim/photonics/filter.hpp"
#include "rofsim/photonics/ring.hpp"
#include "rofsim/scenario/report.hpp"

namespace rofsim {

enum class DeviceType { all_pass_ring, add_drop_ring, drop_filter };

struct DeviceEntry {
    std::string name;
    DeviceType type = DeviceType::all_pass_ring;
    RingParams ring;
    DropFilterSpec filter;

    /// (through, drop) field transfer at absolute frequency f.
    std::pair<cplx, cplx> response(double f) const {
        if (type == DeviceType::drop_filter) {
            const auto r = drop_filter_response(filter, f);
            return {r.through, r.drop};
        }
        const auto r = ring_response(ring, f);
        return {r.through, type == DeviceType::all_pass_ring ? cplx(0.0) : r.drop};
    }
};

struct DeviceSweepConfig {
    std::vector<DeviceEntry> devices;
    double start_hz = 193.3e12;
    double stop_hz = 193.5e12;
    std::size_t points = 2001;
};

struct ResponseRow {
    double freq_hz;
    double through_db;
    double drop_db;
    double phase_rad;  // through port
};

/**
 * Device file: `devices` (list of rings and drop filters) and `sweep`
 * {start_hz, stop_hz, points}. Rings give resonance_hz, fwhm_hz, fsr_hz and
 * optionally loss_a (add-drop only); filters give center_hz, bandwidth_hz, order,
 * insertion_loss_db.
 */
inline DeviceSweepConfig parse_devices(const YAML::Node& root, const std::string& ctx = "devices") {
    if (!root || !root.IsMap() || !root["devices"])
        throw ValidationError(ctx + ": missing sections: devices");
    yaml::check_keys(root, {"devices", "sweep"}, ctx);
    DeviceSweepConfig c;
    for (const auto& y : root["devices"]) {
        const std::string dc = ctx + ".devices";
        yaml::check_keys(y, {"name", "type", "resonance_hz", "fwhm_hz", "fsr_hz", "loss_a", "center_hz",
                             "bandwidth_hz", "order", "insertion_loss_db"}, dc);
        DeviceEntry d;
        d.name = yaml::require<std::string>(y, "name", dc);
        const std::string nc = dc + "[" + d.name + "]";
        const auto type = yaml::require<std::string>(y, "type", nc);
        try {
            if (type == "all_pass_ring" || type == "add_drop_ring") {
                const double res = yaml::require<double>(y, "resonance_hz", nc);
                const double fwhm = yaml::require<double>(y, "fwhm_hz", nc);
                const double fsr = yaml::get(y, "fsr_hz", 1e12, nc);
                if (type == "all_pass_ring") {
                    d.ring = make_critical_ring(res, fwhm, fsr);
                } else {
                    d.type = DeviceType::add_drop_ring;
                    d.ring = make_add_drop_ring(res, fwhm, fsr, yaml::get(y, "loss_a", 1.0, nc));
                }
            } else if (type == "drop_filter") {
                d.type = DeviceType::drop_filter;
                d.filter.center = yaml::require<double>(y, "center_hz", nc);
                d.filter.bandwidth = yaml::require<double>(y, "bandwidth_hz", nc);
                d.filter.order = yaml::get(y, "order", d.filter.order, nc);
                d.filter.insertion_loss_db = yaml::get(y, "insertion_loss_db", 0.0, nc);
                d.filter.validate();
            } else {
                throw ValidationError(nc + ".type: expected all_pass_ring, add_drop_ring or drop_filter");
            }
        } catch (const InvalidArgument& e) {
            throw ValidationError(nc + ": " + e.what());
        }
        c.devices.push_back(d);
    }
    if (const auto s = root["sweep"]) {
        yaml::check_keys(s, {"start_hz", "stop_hz", "points"}, ctx + ".sweep");
        c.start_hz = yaml::get(s, "start_hz", c.start_hz, ctx + ".sweep");
        c.stop_hz = yaml::get(s, "stop_hz", c.stop_hz, ctx + ".sweep");
        c.points = yaml::get(s, "points", c.points, ctx + ".sweep");
    }
    if (!(c.stop_hz > c.start_hz) || c.points < 2)
        throw ValidationError(ctx + ".sweep: need stop_hz > start_hz and at least 2 points");
    return c;
}

inline std::vector<ResponseRow> sweep_device(const DeviceEntry& d, double start, double stop, std::size_t points) {
    std::vector<ResponseRow> rows;
    rows.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
        const auto [t, dr] = d.response(f);
        rows.push_back({f, 10.0 * std::log10(std::max(std::norm(t), 1e-30)),
                        10.0 * std::log10(std::max(std::norm(dr), 1e-30)), std::arg(t)});
    }
    return rows;
}

inline void write_response_csv(std::ostream& os, const std::vector<ResponseRow>& rows) {
    os << "freq_hz,through_db,drop_db,phase_rad\n";
    for (const auto& r : rows)
        os << detail::csv_num(r.freq_hz) << ',' << detail::csv_num(r.through_db) << ','
           << detail::csv_num(r.drop_db) << ',' << detail::csv_num(r.phase_rad) << '\n';
}

/// One response_<device>.csv per device.
inline std::vector<std::filesystem::path> export_device_sweeps(const DeviceSweepConfig& c,
                                                               const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw SimulationError("report", "cannot create output directory " + dir.string());
    std::vector<std::filesystem::path> out;
    for (const auto& d : c.devices) {
        const auto p = dir / ("response_" + detail::file_stem(d.name) + ".csv");
        auto f = detail::open_out(p);
        write_response_csv(f, sweep_device(d, c.start_hz, c.stop_hz, c.points));
        out.push_back(p);
    }
    return out;
}

}  // namespace rofsim
