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
#include <span>
#include <string>
#include <vector>

#include "rofsim/budget/latency.hpp"

namespace rofsim {

inline constexpr double kDefaultSensitivityDbm = -20.0;

struct PowerOptions {
    double launch_dbm = 0.0;
    double sensitivity_dbm = kDefaultSensitivityDbm;
};

struct PowerReport {
    std::vector<std::string> path;
    std::vector<LedgerItem> items;  // dB, losses negative
    double total_db = 0.0;
    double launch_dbm = 0.0;
    double received_dbm = 0.0;
    double sensitivity_dbm = kDefaultSensitivityDbm;
    double margin_db = 0.0;
    bool pass = true;
};

/// Itemized loss along the path; node losses are charged for every node the path enters.
inline PowerReport power_budget(const Topology& topo, std::span<const std::string> path, const PowerOptions& opt = {}) {
    PowerReport r;
    r.path.assign(path.begin(), path.end());
    auto add = [&](std::string label, double db) {
        r.items.push_back({std::move(label), db});
        r.total_db += db;
    };
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& n = topo.node(path[i]);
        if (i == 0) continue;
        const auto& l = topo.link_between(path[i - 1], path[i]);
        add("fiber " + path[i - 1] + "-" + path[i], -l.fiber.loss_db());
        for (const auto& c : l.component_losses) add(c.label, -std::abs(c.db));
        if (n.split_ways > 1) add("splitter 1:" + num(n.split_ways) + " " + n.id, -splitter_loss_db(n.split_ways, n.split_excess_db));
        if (n.chip)
            add(std::string(n.chip->kind == FacetKind::packaged ? "packaged" : "bare") + " coupling " + n.id,
                -facet_loss_db(n.chip->kind) * n.chip->facets);
        if (n.bus_insertion_db != 0.0) add("bus insertion " + n.id, -std::abs(n.bus_insertion_db));
    }
    r.launch_dbm = opt.launch_dbm;
    r.sensitivity_dbm = opt.sensitivity_dbm;
    r.received_dbm = opt.launch_dbm + r.total_db;
    r.margin_db = r.received_dbm - opt.sensitivity_dbm;
    r.pass = r.margin_db >= 0.0;
    return r;
}

inline PowerReport power_budget(const Topology& topo, const std::vector<std::string>& path, const PowerOptions& opt = {}) {
    return power_budget(topo, std::span<const std::string>(path), opt);
}

/// 5G service targets: eMBB and URLLC user-plane latency, CoMP, user-experienced and peak rates.
inline std::vector<ServiceRequirement> service_catalog() {
    return {
        {"embb", 4.0, 20e9, 10e9},
        {"urllc", 0.5, 0.0, 0.0},
        {"comp", 0.15, 0.0, 0.0},
        {"user-experienced", 4.0, 100e6, 50e6},
        {"vr", 4.0, 5.2e9, 0.0},
    };
}

inline ServiceRequirement service_by_name(const std::string& name) {
    for (const auto& s : service_catalog())
        if (s.name == name) return s;
    throw ValidationError("unknown service '" + name + "'");
}

}  // namespace rofsim
