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
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rofsim/budget/topology.hpp"

namespace rofsim {

/// Fiber delay in microseconds; round_trip doubles it.
inline double propagation_delay(double length_km, bool round_trip, double us_per_km = kGroupDelayUsPerKm) {
    if (!(length_km >= 0.0)) throw InvalidArgument("propagation_delay: length must be >= 0, got " + num(length_km));
    return length_km * us_per_km * (round_trip ? 2.0 : 1.0);
}

struct ServiceRequirement {
    std::string name;
    double one_way_latency_limit_ms = 4.0;
    double dl_rate = 0.0;  // bit/s
    double ul_rate = 0.0;

    void validate() const {
        if (!(one_way_latency_limit_ms > 0.0))
            throw ValidationError("service '" + name + "': latency limit must be positive");
        if (dl_rate < 0.0 || ul_rate < 0.0) throw ValidationError("service '" + name + "': rates must be >= 0");
    }
};

struct LedgerItem {
    std::string label;
    double value = 0.0;
};

struct LatencyReport {
    std::vector<std::string> path;
    std::vector<LedgerItem> items;  // microseconds
    double propagation_us = 0.0;
    double processing_us = 0.0;
    double total_us = 0.0;
    double limit_us = 0.0;
    bool pass = true;
};

/**
 * One-way latency along consecutive node ids. Processing is charged for every node the
 * path enters, i.e. all but the first, so budgets of joined paths add exactly.
 */
inline LatencyReport latency_budget(const Topology& topo, std::span<const std::string> path,
                                    const ServiceRequirement& service) {
    service.validate();
    LatencyReport r;
    r.path.assign(path.begin(), path.end());
    r.limit_us = service.one_way_latency_limit_ms * 1e3;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& n = topo.node(path[i]);
        if (i == 0) continue;
        const auto& l = topo.link_between(path[i - 1], path[i]);
        const double prop = l.fiber.delay_us();
        r.items.push_back({"fiber " + path[i - 1] + "-" + path[i], prop});
        r.propagation_us += prop;
        if (n.processing_delay_us > 0.0) r.items.push_back({"processing " + n.id, n.processing_delay_us});
        if (n.ecpri) r.items.push_back({"ecpri queue " + n.id, n.ecpri_queue_us});
        r.processing_us += n.total_processing_us();
    }
    r.total_us = r.propagation_us + r.processing_us;
    r.pass = r.total_us <= r.limit_us;
    return r;
}

inline LatencyReport latency_budget(const Topology& topo, const std::vector<std::string>& path,
                                    const ServiceRequirement& service) {
    return latency_budget(topo, std::span<const std::string>(path), service);
}

struct CompLimits {
    double latency_us = 150.0;
    double sync_us = 1.5;
};

struct RuDelay {
    std::string ru;
    double one_way_us = 0.0;
    bool within_latency = true;
};

struct OffendingPair {
    std::string a;
    std::string b;
    double differential_us = 0.0;
};

struct FeasibilityReport {
    std::string controller;
    std::vector<RuDelay> rus;
    std::vector<OffendingPair> pairs;  // over the sync limit
    bool compensated = false;
    bool latency_ok = true;
    bool sync_ok = true;
    bool pass = true;
};

/**
 * Coordinated multipoint check: every RU must see a one-way latency below the limit, and
 * any two RUs must differ by at most the sync limit unless the controller compensates.
 */
inline FeasibilityReport comp_feasibility(const Topology& topo, const std::set<std::string>& ru_ids,
                                          const std::string& controller, const CompLimits& lim = {}) {
    FeasibilityReport r;
    r.controller = controller;
    r.compensated = topo.node(controller).sync_compensation;
    ServiceRequirement any{"comp", lim.latency_us / 1e3, 0.0, 0.0};
    for (const auto& id : ru_ids) {
        const auto lat = latency_budget(topo, topo.route(controller, id), any);
        const bool ok = lat.total_us < lim.latency_us;
        r.rus.push_back({id, lat.total_us, ok});
        r.latency_ok = r.latency_ok && ok;
    }
    for (std::size_t i = 0; i < r.rus.size(); ++i)
        for (std::size_t j = i + 1; j < r.rus.size(); ++j) {
            const double d = std::abs(r.rus[i].one_way_us - r.rus[j].one_way_us);
            if (d > lim.sync_us) r.pairs.push_back({r.rus[i].ru, r.rus[j].ru, d});
        }
    r.sync_ok = r.pairs.empty() || r.compensated;
    r.pass = r.latency_ok && r.sync_ok;
    return r;
}

}  // namespace rofsim
