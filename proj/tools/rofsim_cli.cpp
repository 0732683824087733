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


#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rofsim/rofsim.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "both";
    bool full = false;
};

rofsim::ScenarioConfig load(const Common& c) {
    auto root = rofsim::yaml::load_file(c.config);
    if (c.seed && root.IsMap()) root["seed"] = *c.seed;
    auto cfg = rofsim::parse_scenario(root, c.config);
    if (!c.out.empty()) cfg.output_dir = c.out;
    return cfg;
}

void print_summary(const rofsim::MetricsReport& r) {
    std::printf("%s: %zu chunks, %zu bits/point target\n", r.name.c_str(), r.chunks, r.bits_per_point);
    for (const auto& d : r.downlink) {
        std::printf("  %-18s", d.name.c_str());
        for (const auto& p : d.waterfall) std::printf(" %6.1f:%.2e", p.rx_power_dbm, p.ber);
        std::printf("  %s%s\n", d.pass_at_top ? "PASS" : "FAIL", d.monotone ? "" : " (non-monotone)");
    }
    for (const auto& u : r.uplink)
        std::printf("  %-18s uplink via %s ber %.2e evm %.3f\n", u.name.c_str(), u.receiver.c_str(), u.ber.ber,
                    u.ber.evm_rms);
    for (const auto& o : r.onus) {
        std::printf("  onu %-6s rof tap %.2f dB, broadband tap %.2f dB", o.channel.c_str(), o.ledger.rof_tap_cost_db,
                    o.ledger.broadband_tap_cost_db);
        if (o.uplink_to_residual_db) std::printf(", uplink/residual %.1f dB", *o.uplink_to_residual_db);
        std::printf("\n");
    }
}

int simulate(const Common& c, const std::optional<std::vector<double>>& points) {
    auto cfg = load(c);
    if (points) {
        cfg.sweep.points = *points;
        std::sort(cfg.sweep.points.begin(), cfg.sweep.points.end());
    }
    const auto fmt = rofsim::parse_report_format(c.format);
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = rofsim::run_scenario(cfg, {c.full, true});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    print_summary(rep);
    for (const auto& p : rofsim::emit_reports(rep, cfg.output_dir, fmt)) std::printf("wrote %s\n", p.string().c_str());
    std::fprintf(stderr, "runtime %.1f s\n", secs);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rofsim: radio-over-fiber access network simulator"};
    app.require_subcommand(1);

    Common run_opt;
    auto add_common = [](CLI::App* sub, Common& o) {
        sub->add_option("--config", o.config, "Scenario file (YAML)")->required();
        sub->add_option("--seed", o.seed, "Override the scenario seed");
        sub->add_option("--out", o.out, "Output directory");
        sub->add_option("--format", o.format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
        sub->add_flag("--full", o.full, "Use the full bit count per point");
    };
    auto* run = app.add_subcommand("run", "Run a scenario and write reports");
    add_common(run, run_opt);

    Common sweep_opt;
    std::string axis = "received_power_dbm";
    std::vector<double> points;
    double start = 0.0, stop = 0.0, step = 0.0;
    auto* sweep = app.add_subcommand("sweep", "Run a scenario with an overridden sweep axis");
    add_common(sweep, sweep_opt);
    sweep->add_option("--axis", axis, "Sweep axis")->check(CLI::IsMember({"received_power_dbm"}));
    sweep->add_option("--points", points, "Explicit sweep points")->delimiter(',');
    sweep->add_option("--start", start, "First point");
    sweep->add_option("--stop", stop, "Last point");
    sweep->add_option("--step", step, "Point spacing");

    std::string budget_cfg, budget_out;
    auto* budget = app.add_subcommand("budget", "Latency, power, CoMP and fronthaul budgets (no waveforms)");
    budget->add_option("--config", budget_cfg, "Budget file (YAML)")->required();
    budget->add_option("--out", budget_out, "Write budget.json into this directory");

    std::string dev_cfg, dev_out = "out/devices";
    auto* devices = app.add_subcommand("devices", "Export device frequency responses as CSV");
    devices->add_option("--config", dev_cfg, "Device file (YAML)")->required();
    devices->add_option("--out", dev_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*run) return simulate(run_opt, std::nullopt);
        if (*sweep) {
            std::optional<std::vector<double>> pts;
            if (!points.empty()) {
                pts = points;
            } else if (sweep->count("--start") || sweep->count("--stop") || sweep->count("--step")) {
                if (!(step > 0.0) || stop < start)
                    throw rofsim::ValidationError("sweep: need --step > 0 and --stop >= --start");
                pts.emplace();
                for (int i = 0; start + i * step <= stop + 1e-9 * step; ++i) pts->push_back(start + i * step);
            }
            return simulate(sweep_opt, pts);
        }
        if (*budget) {
            const auto r = rofsim::run_budget(rofsim::load_budget_plan(budget_cfg));
            std::cout << r.text;
            if (!budget_out.empty()) {
                std::filesystem::create_directories(budget_out);
                std::ofstream f(std::filesystem::path(budget_out) / "budget.json");
                if (!f) throw rofsim::SimulationError("report", "cannot write " + budget_out);
                f << r.json.dump(2) << '\n';
            }
            return 0;
        }
        if (*devices) {
            for (const auto& p : rofsim::export_device_sweeps(rofsim::parse_devices(rofsim::yaml::load_file(dev_cfg), dev_cfg),
                                                             dev_out))
                std::printf("wrote %s\n", p.string().c_str());
            return 0;
        }
    } catch (const rofsim::ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const rofsim::TopologyError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return kExitRuntime;
    }
    return 0;
}
