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

#include "wpt/bench.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace wpt::bench
{
namespace
{
std::string num(double x)
{
    if (std::isnan(x))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string o = "\"";
    for (char c : s)
    {
        if (c == '"')
            o += '"';
        o += c == '\n' ? ' ' : c;
    }
    return o + "\"";
}

std::vector<std::string> split_csv(const std::string &line)
{
    std::vector<std::string> out(1);
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i)
    {
        const char c = line[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
                out.back() += '"', ++i;
            else if (c == '"')
                quoted = false;
            else
                out.back() += c;
        }
        else if (c == '"')
            quoted = true;
        else if (c == ',')
            out.emplace_back();
        else
            out.back() += c;
    }
    return out;
}

const char *budget_kind(const PowerBudget &b) { return b.kind == PowerBudget::Kind::Eirp ? "eirp_dbm" : "power_w"; }

double budget_value(const PowerBudget &b)
{
    return b.kind == PowerBudget::Kind::Eirp ? 10.0 * std::log10(b.watts) + 30.0 : b.watts;
}

constexpr const char *results_header =
    "point,trial,algorithm,variant,M,N,K,distance_m,budget_kind,budget_value,power_w,seed,status,iterations,"
    "vout_min,vout_wsum,vout_users,error";

double mean(const std::vector<double> &x)
{
    double s = 0.0;
    for (double v : x)
        s += v;
    return x.empty() ? std::nan("") : s / static_cast<double>(x.size());
}

// Linear interpolation between order statistics.
double percentile(std::vector<double> x, double q)
{
    if (x.empty())
        return std::nan("");
    std::sort(x.begin(), x.end());
    const double pos = q * static_cast<double>(x.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(pos));
    const size_t hi = std::min(lo + 1, x.size() - 1);
    return x[lo] + (pos - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

} // namespace

bool reference_matches(const Reference &r, const GroupSummary &g)
{
    if (r.algorithm != g.algorithm || !g.variant.empty())
        return false;
    for (const auto &[k, v] : r.at)
    {
        double have = 0.0;
        if (k == "M")
            have = g.at.antennas;
        else if (k == "N")
            have = g.at.tones;
        else if (k == "K")
            have = g.at.users;
        else if (k == "distance_m")
            have = g.at.distance_m;
        else if (k == "budget_value")
            have = budget_value(g.at.budget);
        if (std::abs(have - v) > 1e-9 * std::max(1.0, std::abs(v)))
            return false;
    }
    return true;
}

void write_results_csv(std::ostream &os, const std::vector<ResultRow> &rows)
{
    os << "# wpt-bench results v" << results_schema_version << '\n' << results_header << '\n';
    for (const auto &r : rows)
    {
        std::string users;
        for (size_t q = 0; q < r.vout.size(); ++q)
            users += (q ? ";" : "") + num(r.vout[q]);
        os << r.point << ',' << r.trial << ',' << csv_field(r.algorithm) << ',' << csv_field(r.variant) << ','
           << r.at.antennas << ',' << r.at.tones << ',' << r.at.users << ',' << num(r.at.distance_m) << ','
           << budget_kind(r.at.budget) << ',' << num(budget_value(r.at.budget)) << ',' << num(r.at.power_w()) << ','
           << r.seed << ',' << r.status << ',' << r.iterations << ',' << num(r.vout_min) << ',' << num(r.vout_wsum)
           << ',' << users << ',' << csv_field(r.error) << '\n';
    }
}

void write_timings_csv(std::ostream &os, const std::vector<ResultRow> &rows)
{
    os << "point,trial,algorithm,variant,seconds\n";
    for (const auto &r : rows)
        os << r.point << ',' << r.trial << ',' << csv_field(r.algorithm) << ',' << csv_field(r.variant) << ','
           << num(r.seconds) << '\n';
}

std::vector<ResultRow> read_results_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || line != "# wpt-bench results v" + std::to_string(results_schema_version))
        throw std::runtime_error("read_results_csv: missing or unsupported version line");
    if (!std::getline(is, line) || line != results_header)
        throw std::runtime_error("read_results_csv: unexpected column header");
    std::vector<ResultRow> rows;
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        const auto f = split_csv(line);
        if (f.size() != 18)
            throw std::runtime_error("read_results_csv: expected 18 fields in '" + line + "'");
        ResultRow r;
        r.point = std::stoi(f[0]);
        r.trial = std::stoi(f[1]);
        r.algorithm = f[2];
        r.variant = f[3];
        r.at.index = r.point;
        r.at.antennas = std::stoi(f[4]);
        r.at.tones = std::stoi(f[5]);
        r.at.users = std::stoi(f[6]);
        r.at.distance_m = std::stod(f[7]);
        r.at.budget = f[8] == "eirp_dbm" ? PowerBudget::eirp_dbm(std::stod(f[9])) : PowerBudget::total(std::stod(f[9]));
        r.seed = std::stoull(f[11]);
        r.status = f[12];
        r.iterations = std::stoi(f[13]);
        r.vout_min = std::stod(f[14]);
        r.vout_wsum = std::stod(f[15]);
        std::stringstream us(f[16]);
        for (std::string v; std::getline(us, v, ';');)
            r.vout.push_back(std::stod(v));
        r.error = f[17];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::optional<double> GroupSummary::metric(const std::string &name) const
{
    if (name == "mean_vout_min")
        return mean_vout_min;
    if (name == "mean_vout_wsum")
        return mean_vout_wsum;
    if (name == "mean_vout_over_power")
        return mean_vout_over_power;
    if (name == "p10")
        return p10;
    if (name == "p50")
        return p50;
    if (name == "p90")
        return p90;
    if (name == "mean_iterations")
        return mean_iterations;
    if (name == "mean_seconds")
        return mean_seconds;
    return std::nullopt;
}

std::pair<double, double> bootstrap_mean_ci(const std::vector<double> &x, int resamples, std::uint64_t seed,
                                            double level)
{
    if (x.empty())
        return {std::nan(""), std::nan("")};
    if (x.size() == 1)
        return {x[0], x[0]};
    Rng rng(seed);
    std::uniform_int_distribution<size_t> pick(0, x.size() - 1);
    std::vector<double> means(static_cast<size_t>(resamples));
    for (auto &m : means)
    {
        double s = 0.0;
        for (size_t i = 0; i < x.size(); ++i)
            s += x[pick(rng)];
        m = s / static_cast<double>(x.size());
    }
    const double a = (1.0 - level) / 2.0;
    return {percentile(means, a), percentile(means, 1.0 - a)};
}

std::vector<GroupSummary> summarize(const std::vector<ResultRow> &rows, std::uint64_t seed)
{
    std::vector<GroupSummary> groups;
    std::map<std::tuple<int, std::string, std::string>, size_t> index;
    std::vector<std::vector<const ResultRow *>> members;
    for (const auto &r : rows)
    {
        const auto key = std::make_tuple(r.point, r.algorithm, r.variant);
        auto it = index.find(key);
        if (it == index.end())
        {
            it = index.emplace(key, groups.size()).first;
            GroupSummary g;
            g.point = r.point;
            g.at = r.at;
            g.algorithm = r.algorithm;
            g.variant = r.variant;
            groups.push_back(g);
            members.emplace_back();
        }
        members[it->second].push_back(&r);
    }
    for (size_t i = 0; i < groups.size(); ++i)
    {
        auto &g = groups[i];
        std::vector<double> vmin, vsum, iters, secs;
        std::vector<std::vector<double>> per_user(static_cast<size_t>(g.at.users));
        for (const ResultRow *r : members[i])
        {
            if (r->status == "ERROR")
            {
                ++g.errors;
                continue;
            }
            vmin.push_back(r->vout_min);
            vsum.push_back(r->vout_wsum);
            iters.push_back(r->iterations);
            secs.push_back(r->seconds);
            for (size_t q = 0; q < per_user.size() && q < r->vout.size(); ++q)
                per_user[q].push_back(r->vout[q]);
        }
        g.count = static_cast<int>(vmin.size());
        g.mean_vout_min = mean(vmin);
        g.mean_vout_wsum = mean(vsum);
        std::uint64_t h = 0;
        for (unsigned char c : g.algorithm + "|" + g.variant)
            h = h * 131 + c;
        std::tie(g.ci_low, g.ci_high) = bootstrap_mean_ci(vmin, 2000, derive_seed(seed, {static_cast<std::uint64_t>(g.point), h, 1}));
        std::tie(g.wsum_ci_low, g.wsum_ci_high) =
            bootstrap_mean_ci(vsum, 2000, derive_seed(seed, {static_cast<std::uint64_t>(g.point), h, 2}));
        for (const auto &u : per_user)
            g.mean_vout.push_back(mean(u));
        g.p10 = percentile(vmin, 0.10);
        g.p50 = percentile(vmin, 0.50);
        g.p90 = percentile(vmin, 0.90);
        g.mean_vout_over_power = g.mean_vout_min / g.at.power_w();
        g.mean_iterations = mean(iters);
        g.mean_seconds = mean(secs);
    }
    return groups;
}

void write_summary_json(std::ostream &os, const ScenarioConfig &cfg, const std::vector<GroupSummary> &groups)
{
    using nlohmann::json;
    json doc;
    doc["schema_version"] = results_schema_version;
    doc["scenario"] = cfg.name;
    doc["description"] = cfg.description;
    doc["trials"] = cfg.trials;
    doc["seed"] = cfg.seed;
    json jg = json::array();
    for (const auto &g : groups)
    {
        json e;
        e["point"] = g.point;
        e["M"] = g.at.antennas;
        e["N"] = g.at.tones;
        e["K"] = g.at.users;
        e["distance_m"] = g.at.distance_m;
        e["budget_kind"] = budget_kind(g.at.budget);
        e["budget_value"] = budget_value(g.at.budget);
        e["power_w"] = g.at.power_w();
        e["algorithm"] = g.algorithm;
        e["variant"] = g.variant;
        e["count"] = g.count;
        e["errors"] = g.errors;
        e["mean_vout_min"] = g.mean_vout_min;
        e["ci95_vout_min"] = {g.ci_low, g.ci_high};
        e["mean_vout_wsum"] = g.mean_vout_wsum;
        e["ci95_vout_wsum"] = {g.wsum_ci_low, g.wsum_ci_high};
        e["mean_vout"] = g.mean_vout;
        e["p10_vout_min"] = g.p10;
        e["p50_vout_min"] = g.p50;
        e["p90_vout_min"] = g.p90;
        e["mean_vout_over_power"] = g.mean_vout_over_power;
        e["mean_iterations"] = g.mean_iterations;
        json refs = json::array();
        for (const auto &r : cfg.references)
            if (reference_matches(r, g))
            {
                const double got = *g.metric(r.metric);
                refs.push_back({{"metric", r.metric}, {"reference", r.value}, {"measured", got},
                                {"ratio", got / r.value}, {"note", r.note}});
            }
        if (!refs.empty())
            e["references"] = refs;
        jg.push_back(e);
    }
    doc["groups"] = jg;
    os << doc.dump(2) << '\n';
}

std::vector<GroupSummary> run_and_write(const ScenarioConfig &cfg, const std::string &dir, int workers)
{
    const auto rows = run_scenario(cfg, workers);
    const auto groups = summarize(rows, cfg.seed);
    std::filesystem::create_directories(dir);
    const std::filesystem::path base = std::filesystem::path(dir) / cfg.output;
    auto open = [](const std::filesystem::path &p) {
        std::ofstream f(p);
        if (!f)
            throw std::runtime_error("cannot write '" + p.string() + "'");
        return f;
    };
    {
        auto f = open(base.string() + ".csv");
        write_results_csv(f, rows);
    }
    {
        auto f = open(base.string() + ".timings.csv");
        write_timings_csv(f, rows);
    }
    {
        auto f = open(base.string() + ".summary.json");
        write_summary_json(f, cfg, groups);
    }
    return groups;
}
} // namespace wpt::bench
