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

#pragma once

#include "wpt/waveform.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wpt::bench
{
enum class Algorithm
{
    SuWpt,
    Wsum,
    WsumS,
    FaWsum,
    CheWsum,
    MaxMinRr,
    MaxMinRand,
    CheMaxMinRr,
    CheMaxMinRand,
    Ass,
    UpMrt,
    MuUp,
};

const char *to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view id);
std::vector<std::string> algorithm_ids();

// Single-user algorithms act on user 0 only.
bool single_user(Algorithm a);

struct AlgorithmSpec
{
    Algorithm algorithm = Algorithm::SuWpt;
    std::string label;           // row key; defaults to the algorithm id
    ScaConfig sca;
    std::vector<double> weights; // weighted-sum designs; empty means all ones
};

enum class ChannelKind
{
    Tdl,              // tapped delay line per user, antenna
    HardenedGaussian, // i.i.d. CN(0, Lambda) entries
    HardenedExact,    // orthogonal channels with exact norms
};

enum class RunMode
{
    MonteCarlo,
    Region, // weight sweep of two-user weighted-sum designs plus TDMA segments
};

// Published value attached to matching summary groups.
struct Reference
{
    std::string algorithm;     // label
    std::string metric;        // summary field, e.g. "mean_vout_min"
    std::map<std::string, double> at; // coordinate filter: M, N, K, distance_m, budget_value
    double value = 0.0;
    std::string note;
};

struct ScenarioConfig
{
    std::string name = "scenario";
    std::string description;
    PropagationConfig propagation;
    RectifierParams rectifier;
    ChannelKind channel = ChannelKind::Tdl;
    RunMode mode = RunMode::MonteCarlo;
    std::vector<AlgorithmSpec> algorithms;

    std::vector<int> antennas;
    std::vector<int> tones;
    std::vector<int> users;
    std::vector<double> distances_m;
    std::vector<PowerBudget> budgets;

    int trials = 1;
    std::uint64_t seed = 1;
    std::string output = "results";
    int region_points = 11;       // weight pairs per region sweep
    std::vector<Reference> references;

    // Every problem found, empty when the config is usable.
    std::vector<std::string> validate() const;
};

struct ConfigError : std::runtime_error
{
    std::vector<std::string> problems;
    explicit ConfigError(std::vector<std::string> p);
};

// Throws ConfigError listing every problem found in the text.
ScenarioConfig parse_config(std::string_view toml_text, const std::string &source = "config");
ScenarioConfig load_config(const std::string &path);

// Bundled presets.
std::vector<std::string> preset_ids();
std::string preset_text(const std::string &id); // throws std::invalid_argument for unknown ids
ScenarioConfig load_preset(const std::string &id);

struct SweepPoint
{
    int index = 0;
    int antennas = 1;
    int tones = 1;
    int users = 1;
    double distance_m = 10.0;
    PowerBudget budget;
    double power_w() const { return budget.power(antennas); }
};

std::vector<SweepPoint> expand_sweep(const ScenarioConfig &cfg);

struct ResultRow
{
    int point = 0;
    int trial = 0;
    std::string algorithm;
    std::string variant; // region mode: weight pair or TDMA share
    SweepPoint at;
    std::uint64_t seed = 0;
    std::string status; // CONVERGED, MAX_ITER, or ERROR
    std::string error;
    int iterations = 0;
    std::vector<double> vout;
    double vout_min = 0.0;
    double vout_wsum = 0.0;
    double seconds = 0.0; // kept out of the results CSV
};

// Seed of one Monte Carlo trial; shared by every sweep point.
std::uint64_t trial_seed(std::uint64_t base, int trial);

// Rows in canonical order (point, trial, algorithm list order, variant).
// Worker count comes from WPT_WORKERS when workers <= 0.
std::vector<ResultRow> run_scenario(const ScenarioConfig &cfg, int workers = 0);

// Runs one (point, trial) cell; exposed for tests.
std::vector<ResultRow> run_cell(const ScenarioConfig &cfg, const SweepPoint &pt, int trial);

inline constexpr int results_schema_version = 1;

void write_results_csv(std::ostream &os, const std::vector<ResultRow> &rows);
void write_timings_csv(std::ostream &os, const std::vector<ResultRow> &rows);
std::vector<ResultRow> read_results_csv(std::istream &is);

struct GroupSummary
{
    int point = 0;
    SweepPoint at;
    std::string algorithm;
    std::string variant;
    int count = 0;
    int errors = 0;
    double mean_vout_min = 0.0;
    double ci_low = 0.0, ci_high = 0.0; // 95% bootstrap interval of mean_vout_min
    double mean_vout_wsum = 0.0;
    double wsum_ci_low = 0.0, wsum_ci_high = 0.0;
    std::vector<double> mean_vout; // per user
    double p10 = 0.0, p50 = 0.0, p90 = 0.0; // percentiles of vout_min
    double mean_vout_over_power = 0.0;
    double mean_iterations = 0.0;
    double mean_seconds = 0.0;

    std::optional<double> metric(const std::string &name) const;
};

// Percentile bootstrap of the mean, deterministic given the seed.
std::pair<double, double> bootstrap_mean_ci(const std::vector<double> &x, int resamples, std::uint64_t seed,
                                            double level = 0.95);

std::vector<GroupSummary> summarize(const std::vector<ResultRow> &rows, std::uint64_t seed);

// Whether a published value applies to a summary group.
bool reference_matches(const Reference &r, const GroupSummary &g);

void write_summary_json(std::ostream &os, const ScenarioConfig &cfg, const std::vector<GroupSummary> &groups);

// Runs the scenario and writes <dir>/<name>.csv, <name>.timings.csv and
// <name>.summary.json. Returns the summary groups.
std::vector<GroupSummary> run_and_write(const ScenarioConfig &cfg, const std::string &dir, int workers = 0);
} // namespace wpt::bench
