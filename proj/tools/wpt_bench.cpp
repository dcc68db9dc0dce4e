// SPDX-License-Identifier: Apache-2.0
//
// wpt-waveform: multisine waveform design for far-field wireless power transfer
// Copyright (C) 2026 wpt-waveform contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// wpt-bench: Monte Carlo runner for the waveform designs.

#include "wpt/bench.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace
{
using namespace wpt::bench;

void print_summary(const ScenarioConfig &cfg, const std::vector<GroupSummary> &groups, const std::string &dir)
{
    std::printf("%-22s %-10s %4s %4s %3s %9s %12s %12s  %-27s %8s %9s\n", "algorithm", "variant", "M", "N", "K",
                "dist[m]", "P[W]", "mean vmin", "95% CI", "iters", "sec");
    for (const auto &g : groups)
        std::printf("%-22s %-10s %4d %4d %3d %9.3g %12.5g %12.5g  [%11.5g, %11.5g] %8.2f %9.3g\n",
                    g.algorithm.c_str(), g.variant.c_str(), g.at.antennas, g.at.tones, g.at.users, g.at.distance_m,
                    g.at.power_w(), g.mean_vout_min, g.ci_low, g.ci_high, g.mean_iterations, g.mean_seconds);
    for (const auto &r : cfg.references)
        for (const auto &g : groups)
        {
            if (reference_matches(r, g))
                std::printf("reference %-18s %-22s published %.5g measured %.5g  %s\n", r.algorithm.c_str(),
                            r.metric.c_str(), r.value, *g.metric(r.metric), r.note.c_str());
        }
    std::printf("wrote %s/%s.{csv,timings.csv,summary.json}\n", dir.c_str(), cfg.output.c_str());
}

int report_config_error(const ConfigError &e)
{
    std::cerr << "configuration rejected (" << e.problems.size() << " problem"
              << (e.problems.size() == 1 ? "" : "s") << "):\n";
    for (const auto &p : e.problems)
        std::cerr << "  - " << p << '\n';
    return 2;
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Multisine WPT waveform benchmark runner"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir = "results";
    int workers = 0, trials = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto *run = app.add_subcommand("run", "Run a scenario from a TOML config");
    run->add_option("--config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--workers", workers, "Worker threads (default: WPT_WORKERS or all cores)");

    auto *rep = app.add_subcommand("reproduce", "Run a bundled preset");
    rep->add_option("--preset", preset, "Preset id (see list-presets)")->required();
    rep->add_option("--trials", trials, "Override the trial count")->check(CLI::PositiveNumber);
    rep->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t &s) { seed = s, seed_given = true; }, "Override the seed");
    rep->add_option("--out", out_dir, "Output directory");
    rep->add_option("--workers", workers, "Worker threads (default: WPT_WORKERS or all cores)");

    auto *val = app.add_subcommand("validate", "Check a config without running it");
    val->add_option("--config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);

    auto *list = app.add_subcommand("list-presets", "List bundled presets");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*list)
        {
            for (const auto &id : preset_ids())
            {
                const auto cfg = load_preset(id);
                std::printf("%-8s %s\n", id.c_str(), cfg.description.c_str());
            }
            return 0;
        }
        if (*val)
        {
            const auto cfg = load_config(config_path);
            std::printf("%s: ok (%zu sweep points, %zu algorithms, %d trials)\n", config_path.c_str(),
                        expand_sweep(cfg).size(), cfg.algorithms.size(), cfg.trials);
            return 0;
        }
        ScenarioConfig cfg;
        if (*run)
            cfg = load_config(config_path);
        else
        {
            try
            {
                cfg = load_preset(preset);
            }
            catch (const std::invalid_argument &e)
            {
                std::cerr << e.what() << "; known presets:";
                for (const auto &id : preset_ids())
                    std::cerr << ' ' << id;
                std::cerr << '\n';
                return 2;
            }
            if (trials > 0)
                cfg.trials = trials;
            if (seed_given)
                cfg.seed = seed;
        }
        const auto groups = run_and_write(cfg, out_dir, workers);
        print_summary(cfg, groups, out_dir);
        for (const auto &g : groups)
            if (g.errors > 0)
            {
                std::cerr << "warning: " << g.errors << " failed trial(s) for " << g.algorithm << " at point "
                          << g.point << " (see the error column)\n";
            }
        return 0;
    }
    catch (const ConfigError &e)
    {
        return report_config_error(e);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
