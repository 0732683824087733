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

#include <set>
#include <string>
#include <vector>

#include "rofsim/budget/fronthaul.hpp"
#include "rofsim/budget/latency.hpp"
#include "rofsim/budget/power.hpp"
#include "rofsim/budget/report.hpp"

namespace rofsim {

struct LatencyCheck {
    std::vector<std::string> path;
    ServiceRequirement service;
};

struct PowerCheck {
    std::vector<std::string> path;
    PowerOptions options;
};

struct CompCheck {
    std::string controller;
    std::set<std::string> rus;
    CompLimits limits;
};

/// Topology plus the checks the budget subcommand evaluates on it.
struct BudgetPlan {
    Topology topology;
    std::vector<LatencyCheck> latency;
    std::vector<PowerCheck> power;
    std::vector<CompCheck> comp;
    std::vector<FronthaulSpec> fronthaul;
};

namespace detail {

inline FronthaulSpec parse_fronthaul(const YAML::Node& y, const std::string& ctx) {
    if (y["preset"]) {
        yaml::check_keys(y, {"preset"}, ctx);
        const auto name = yaml::as<std::string>(y["preset"], ctx + ".preset");
        for (const auto& cat : {cpri_catalog(), arof_catalog()})
            for (const auto& s : cat)
                if (s.name == name) return s;
        throw ValidationError(ctx + ": unknown fronthaul preset '" + name + "'" + yaml::where(y));
    }
    yaml::check_keys(y, {"name", "kind", "rf_bandwidth_hz", "sample_rate", "bit_width", "n_antenna_streams",
                         "control_overhead", "line_coding", "ecpri_split_factor", "guard"}, ctx);
    FronthaulSpec s;
    s.name = yaml::require<std::string>(y, "name", ctx);
    s.kind = parse_fronthaul_kind(yaml::require<std::string>(y, "kind", ctx));
    s.rf_bandwidth = yaml::require<double>(y, "rf_bandwidth_hz", ctx);
    s.sample_rate = yaml::optional<double>(y, "sample_rate", ctx);
    s.bit_width = yaml::optional<double>(y, "bit_width", ctx);
    s.n_antenna_streams = yaml::optional<double>(y, "n_antenna_streams", ctx);
    s.control_overhead = yaml::get(y, "control_overhead", s.control_overhead, ctx);
    s.line_coding = yaml::get(y, "line_coding", s.line_coding, ctx);
    s.ecpri_split_factor = yaml::optional<double>(y, "ecpri_split_factor", ctx);
    s.guard = yaml::optional<double>(y, "guard", ctx);
    return s;
}

}  // namespace detail

/**
 * Sections: topology {nodes, links}, latency [{path, service}], power [{path, launch_dbm,
 * sensitivity_dbm}], comp [{controller, rus, latency_limit_us, sync_limit_us}] and
 * fronthaul [{preset} or a full spec]. Services name an entry of service_catalog().
 */
inline BudgetPlan parse_budget_plan(const YAML::Node& root, const std::string& ctx = "budget") {
    if (!root || !root.IsMap() || !root["topology"]) throw ValidationError(ctx + ": missing sections: topology");
    yaml::check_keys(root, {"topology", "latency", "power", "comp", "fronthaul"}, ctx);
    BudgetPlan p{parse_topology(root["topology"], ctx + ".topology"), {}, {}, {}, {}};
    for (const auto& y : root["latency"]) {
        yaml::check_keys(y, {"path", "service"}, ctx + ".latency");
        p.latency.push_back({yaml::require<std::vector<std::string>>(y, "path", ctx + ".latency"),
                             service_by_name(yaml::require<std::string>(y, "service", ctx + ".latency"))});
    }
    for (const auto& y : root["power"]) {
        const std::string pc = ctx + ".power";
        yaml::check_keys(y, {"path", "launch_dbm", "sensitivity_dbm"}, pc);
        PowerCheck c{yaml::require<std::vector<std::string>>(y, "path", pc), {}};
        c.options.launch_dbm = yaml::get(y, "launch_dbm", c.options.launch_dbm, pc);
        c.options.sensitivity_dbm = yaml::get(y, "sensitivity_dbm", c.options.sensitivity_dbm, pc);
        p.power.push_back(c);
    }
    for (const auto& y : root["comp"]) {
        const std::string cc = ctx + ".comp";
        yaml::check_keys(y, {"controller", "rus", "latency_limit_us", "sync_limit_us"}, cc);
        CompCheck c;
        c.controller = yaml::require<std::string>(y, "controller", cc);
        const auto rus = yaml::require<std::vector<std::string>>(y, "rus", cc);
        c.rus.insert(rus.begin(), rus.end());
        c.limits.latency_us = yaml::get(y, "latency_limit_us", c.limits.latency_us, cc);
        c.limits.sync_us = yaml::get(y, "sync_limit_us", c.limits.sync_us, cc);
        p.comp.push_back(c);
    }
    for (const auto& y : root["fronthaul"]) p.fronthaul.push_back(detail::parse_fronthaul(y, ctx + ".fronthaul"));
    return p;
}

inline BudgetPlan load_budget_plan(const std::string& path) { return parse_budget_plan(yaml::load_file(path), path); }

struct BudgetResult {
    ordered_json json;
    std::string text;
    bool pass = true;
};

/// Evaluates every check; `pass` is false when any latency, power or CoMP check fails.
inline BudgetResult run_budget(const BudgetPlan& p) {
    BudgetResult r;
    r.json["latency"] = ordered_json::array();
    r.json["power"] = ordered_json::array();
    r.json["comp"] = ordered_json::array();
    r.json["fronthaul"] = ordered_json::array();
    for (const auto& c : p.latency) {
        const auto rep = latency_budget(p.topology, c.path, c.service);
        auto j = to_json(rep);
        j["service"] = c.service.name;
        r.json["latency"].push_back(j);
        r.text += ledger_table("latency " + c.service.name, rep.items, "us", rep.total_us, rep.pass);
        r.pass = r.pass && rep.pass;
    }
    for (const auto& c : p.power) {
        const auto rep = power_budget(p.topology, c.path, c.options);
        r.json["power"].push_back(to_json(rep));
        r.text += ledger_table("power", rep.items, "dB", rep.total_db, rep.pass);
        r.pass = r.pass && rep.pass;
    }
    for (const auto& c : p.comp) {
        const auto rep = comp_feasibility(p.topology, c.rus, c.controller, c.limits);
        r.json["comp"].push_back(to_json(rep));
        r.text += "comp " + c.controller + ": latency " + (rep.latency_ok ? "ok" : "violated") + ", sync " +
                  (rep.sync_ok ? "ok" : "violated") + "  " + (rep.pass ? "PASS" : "FAIL") + "\n";
        r.pass = r.pass && rep.pass;
    }
    for (const auto& s : p.fronthaul) {
        const auto d = fronthaul_dimension(s);
        r.json["fronthaul"].push_back(to_json(s, d));
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-28s %-6s %14.6g b/s  x%.2f\n", s.name.c_str(), to_string(s.kind),
                      d.line_rate, d.expansion_factor);
        r.text += buf;
    }
    r.json["pass"] = r.pass;
    return r;
}

}  // namespace rofsim
