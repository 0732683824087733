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

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rofsim/budget/fronthaul.hpp"
#include "rofsim/budget/power.hpp"
#include "rofsim/core/yaml.hpp"

namespace rofsim {

using ordered_json = nlohmann::ordered_json;

inline Topology parse_topology(const YAML::Node& root, const std::string& ctx = "topology") {
    yaml::check_keys(root, {"nodes", "links"}, ctx);
    const auto nodes = root["nodes"];
    if (!nodes || !nodes.IsSequence()) throw ValidationError(ctx + ": missing 'nodes' list" + yaml::where(root));
    std::vector<Node> ns;
    for (const auto& y : nodes) {
        const std::string c = ctx + ".nodes";
        yaml::check_keys(y, {"id", "kind", "processing_delay_us", "sync_compensation", "ecpri", "ecpri_queue_us",
                             "split_ways", "split_excess_db", "chip", "bus_insertion_db"}, c);
        Node n;
        n.id = yaml::require<std::string>(y, "id", c);
        const std::string nc = c + "[" + n.id + "]";
        n.kind = parse_node_kind(yaml::require<std::string>(y, "kind", nc));
        n.processing_delay_us = yaml::get(y, "processing_delay_us", 0.0, nc);
        n.sync_compensation = yaml::get(y, "sync_compensation", false, nc);
        n.ecpri = yaml::get(y, "ecpri", false, nc);
        n.ecpri_queue_us = yaml::get(y, "ecpri_queue_us", kDefaultEcpriQueueUs, nc);
        n.split_ways = yaml::get<std::size_t>(y, "split_ways", 0, nc);
        n.split_excess_db = yaml::get(y, "split_excess_db", 0.0, nc);
        n.bus_insertion_db = yaml::get(y, "bus_insertion_db", 0.0, nc);
        if (const auto chip = y["chip"]) {
            yaml::check_keys(chip, {"kind", "facets"}, nc + ".chip");
            ChipCoupling cc;
            const auto kind = yaml::get<std::string>(chip, "kind", "packaged", nc + ".chip");
            if (kind != "packaged" && kind != "bare")
                throw ValidationError(nc + ".chip.kind: expected packaged or bare, got '" + kind + "'");
            cc.kind = kind == "bare" ? FacetKind::bare : FacetKind::packaged;
            cc.facets = yaml::get(chip, "facets", 2, nc + ".chip");
            n.chip = cc;
        }
        ns.push_back(n);
    }
    std::vector<Link> ls;
    if (const auto links = root["links"]) {
        for (const auto& y : links) {
            const std::string c = ctx + ".links";
            yaml::check_keys(y, {"from", "to", "length_km", "atten_db_per_km", "components"}, c);
            Link l;
            l.from = yaml::require<std::string>(y, "from", c);
            l.to = yaml::require<std::string>(y, "to", c);
            const std::string lc = c + "[" + l.from + "-" + l.to + "]";
            l.fiber.length_km = yaml::require<double>(y, "length_km", lc);
            l.fiber.atten_db_per_km = yaml::get(y, "atten_db_per_km", l.fiber.atten_db_per_km, lc);
            if (const auto comps = y["components"])
                for (const auto& cy : comps) {
                    yaml::check_keys(cy, {"label", "db"}, lc + ".components");
                    l.component_losses.push_back({yaml::require<std::string>(cy, "label", lc + ".components"),
                                                  yaml::require<double>(cy, "db", lc + ".components")});
                }
            ls.push_back(l);
        }
    }
    return Topology(std::move(ns), std::move(ls));
}

inline Topology load_topology(const std::string& path) { return parse_topology(yaml::load_file(path), path); }

inline ordered_json ledger_json(const std::vector<LedgerItem>& items) {
    ordered_json a = ordered_json::array();
    for (const auto& i : items) a.push_back({{"label", i.label}, {"value", i.value}});
    return a;
}

inline ordered_json to_json(const LatencyReport& r) {
    return {{"path", r.path},         {"items_us", ledger_json(r.items)}, {"propagation_us", r.propagation_us},
            {"processing_us", r.processing_us}, {"total_us", r.total_us}, {"limit_us", r.limit_us},
            {"pass", r.pass}};
}

inline ordered_json to_json(const PowerReport& r) {
    return {{"path", r.path},
            {"items_db", ledger_json(r.items)},
            {"total_db", r.total_db},
            {"launch_dbm", r.launch_dbm},
            {"received_dbm", r.received_dbm},
            {"sensitivity_dbm", r.sensitivity_dbm},
            {"margin_db", r.margin_db},
            {"pass", r.pass}};
}

inline ordered_json to_json(const FeasibilityReport& r) {
    ordered_json rus = ordered_json::array(), pairs = ordered_json::array();
    for (const auto& u : r.rus) rus.push_back({{"ru", u.ru}, {"one_way_us", u.one_way_us}, {"within_latency", u.within_latency}});
    for (const auto& p : r.pairs) pairs.push_back({{"a", p.a}, {"b", p.b}, {"differential_us", p.differential_us}});
    return {{"controller", r.controller}, {"rus", rus},          {"offending_pairs", pairs},
            {"compensated", r.compensated}, {"latency_ok", r.latency_ok}, {"sync_ok", r.sync_ok},
            {"pass", r.pass}};
}

inline ordered_json to_json(const FronthaulSpec& s, const FronthaulDimension& d) {
    return {{"name", s.name},
            {"kind", to_string(s.kind)},
            {"rf_bandwidth_hz", s.rf_bandwidth},
            {"line_rate", d.line_rate},
            {"expansion_factor", d.expansion_factor}};
}

/// Two-column text table of a ledger with a total line.
inline std::string ledger_table(const std::string& title, const std::vector<LedgerItem>& items, const char* unit,
                                double total, bool pass) {
    std::size_t w = 5;
    for (const auto& i : items) w = std::max(w, i.label.size());
    std::ostringstream os;
    os << title << "\n";
    char buf[64];
    for (const auto& i : items) {
        std::snprintf(buf, sizeof buf, "%12.3f %s", i.value, unit);
        os << "  " << i.label << std::string(w - i.label.size() + 2, ' ') << buf << "\n";
    }
    std::snprintf(buf, sizeof buf, "%12.3f %s", total, unit);
    os << "  " << "total" << std::string(w - 5 + 2, ' ') << buf << "  " << (pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace rofsim
