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

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

namespace wpt::bench
{
namespace
{
std::uint64_t label_key(const std::string &s)
{
    // FNV-1a, stable across platforms.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ChannelRealization make_channel(const ScenarioConfig &cfg, const SweepPoint &pt, std::uint64_t seed)
{
    PropagationConfig pc = cfg.propagation;
    pc.num_antennas = pt.antennas;
    pc.num_tones = pt.tones;
    pc.num_users = pt.users;
    pc.distance_m = {pt.distance_m};
    pc.seed = seed;
    if (cfg.channel == ChannelKind::Tdl)
        return gen_realization(pc);
    std::vector<double> lam;
    for (int q = 0; q < pt.users; ++q)
        lam.push_back(large_scale_gain(pc, q));
    return gen_hardened(lam, pt.antennas, pt.tones,
                        cfg.channel == ChannelKind::HardenedExact ? HardenMode::Exact : HardenMode::Gaussian, seed);
}

PrecoderResult run_algorithm(const AlgorithmSpec &spec, const ChannelRealization &ch, const std::vector<double> &w,
                             double power, const BetaCoefficients &b, const ScaConfig &sca)
{
    const CheInputs che{ch.large_scale, ch.num_tones, power * ch.num_antennas};
    switch (spec.algorithm)
    {
    case Algorithm::SuWpt:
    {
        auto r = su_wpt(ch.h[0], ch.num_antennas, ch.num_tones, power, b, sca);
        r.vout = evaluate_vout(r.s, ch, b);
        return r;
    }
    case Algorithm::Wsum:
        return wsum(ch, w, power, b, sca);
    case Algorithm::WsumS:
        return wsum_s(ch, w, power, b, sca);
    case Algorithm::FaWsum:
        return wsum(ch, fairness_weights(ch, power, b), power, b, sca);
    case Algorithm::CheWsum:
        return che_wsum(che, w, b, sca, &ch);
    case Algorithm::MaxMinRr:
        return max_min_rr(ch, power, b, sca);
    case Algorithm::MaxMinRand:
        return max_min_rand(ch, power, b, sca);
    case Algorithm::CheMaxMinRr:
        return che_max_min_rr(che, b, sca, &ch);
    case Algorithm::CheMaxMinRand:
        return che_max_min_randomized(che, b, sca, &ch);
    case Algorithm::Ass:
        return baseline_ass(ch, 0, power, b);
    case Algorithm::UpMrt:
        return baseline_up_mrt(ch, 0, power, b);
    case Algorithm::MuUp:
        return baseline_mu_up(ch, power, b);
    }
    throw std::logic_error("unhandled algorithm");
}

std::string format_share(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

ResultRow base_row(const SweepPoint &pt, int trial, const std::string &label, std::uint64_t seed)
{
    ResultRow r;
    r.point = pt.index;
    r.trial = trial;
    r.algorithm = label;
    r.at = pt;
    r.seed = seed;
    return r;
}

void fill(ResultRow &row, const std::vector<double> &vout, const std::vector<double> &w)
{
    row.vout = vout;
    row.vout_min = vout.empty() ? 0.0 : *std::min_element(vout.begin(), vout.end());
    row.vout_wsum = 0.0;
    for (size_t q = 0; q < vout.size(); ++q)
        row.vout_wsum += (w.empty() ? 1.0 : w[q]) * vout[q];
}

void fail(ResultRow &row, const std::exception &e, int users)
{
    row.status = "ERROR";
    row.error = e.what();
    row.vout.assign(static_cast<size_t>(users), std::numeric_limits<double>::quiet_NaN());
    row.vout_min = row.vout_wsum = std::numeric_limits<double>::quiet_NaN();
}

int worker_count(int requested)
{
    if (requested > 0)
        return requested;
    if (const char *env = std::getenv("WPT_WORKERS"))
    {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}
} // namespace

std::uint64_t trial_seed(std::uint64_t base, int trial)
{
    return derive_seed(base, {static_cast<std::uint64_t>(trial)});
}

std::vector<ResultRow> run_cell(const ScenarioConfig &cfg, const SweepPoint &pt, int trial)
{
    using clock = std::chrono::steady_clock;
    const std::uint64_t tseed = trial_seed(cfg.seed, trial);
    const BetaCoefficients b = beta_coefficients(cfg.rectifier);
    const double power = pt.power_w();
    std::vector<ResultRow> rows;

    ChannelRealization ch;
    try
    {
        ch = make_channel(cfg, pt, tseed);
    }
    catch (const std::exception &e)
    {
        for (const auto &spec : cfg.algorithms)
        {
            rows.push_back(base_row(pt, trial, spec.label, tseed));
            fail(rows.back(), e, pt.users);
        }
        return rows;
    }

    for (const auto &spec : cfg.algorithms)
    {
        ScaConfig sca = spec.sca;
        sca.seed = derive_seed(tseed, {label_key(spec.label)});
        const std::vector<double> ones(static_cast<size_t>(pt.users), 1.0);

        if (cfg.mode == RunMode::MonteCarlo)
        {
            ResultRow row = base_row(pt, trial, spec.label, sca.seed);
            const std::vector<double> &w = spec.weights.empty() ? ones : spec.weights;
            try
            {
                const auto t0 = clock::now();
                const PrecoderResult res = run_algorithm(spec, ch, w, power, b, sca);
                row.seconds = std::chrono::duration<double>(clock::now() - t0).count();
                row.status = to_string(res.trace.status);
                row.iterations = res.trace.iterations;
                fill(row, res.vout, w);
            }
            catch (const std::exception &e)
            {
                fail(row, e, pt.users);
            }
            rows.push_back(std::move(row));
            continue;
        }

        // Region sweep over (w1, 1 - w1), then time sharing between the two corners.
        const int n = cfg.region_points;
        std::vector<double> corner(2, std::numeric_limits<double>::quiet_NaN());
        for (int i = 0; i < n; ++i)
        {
            const double w1 = static_cast<double>(i) / (n - 1);
            const std::vector<double> w = {w1, 1.0 - w1};
            ResultRow row = base_row(pt, trial, spec.label, sca.seed);
            row.variant = "w1=" + format_share(w1);
            try
            {
                const auto t0 = clock::now();
                const PrecoderResult res = run_algorithm(spec, ch, w, power, b, sca);
                row.seconds = std::chrono::duration<double>(clock::now() - t0).count();
                row.status = to_string(res.trace.status);
                row.iterations = res.trace.iterations;
                fill(row, res.vout, ones);
                if (i == 0)
                    corner[1] = res.vout[1];
                if (i == n - 1)
                    corner[0] = res.vout[0];
            }
            catch (const std::exception &e)
            {
                fail(row, e, pt.users);
            }
            rows.push_back(std::move(row));
        }
        for (int i = 0; i < n; ++i)
        {
            const double s1 = static_cast<double>(i) / (n - 1);
            ResultRow row = base_row(pt, trial, spec.label + "_tdma", sca.seed);
            row.variant = "s1=" + format_share(s1);
            row.status = "CONVERGED";
            fill(row, tdma_compose(corner, {s1, 1.0 - s1}), ones);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<ResultRow> run_scenario(const ScenarioConfig &cfg, int workers)
{
    if (auto problems = cfg.validate(); !problems.empty())
        throw ConfigError(std::move(problems));
    const auto points = expand_sweep(cfg);
    const size_t cells = points.size() * static_cast<size_t>(cfg.trials);
    std::vector<std::vector<ResultRow>> out(cells);

    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next++; i < cells; i = next++)
        {
            const auto &pt = points[i / static_cast<size_t>(cfg.trials)];
            out[i] = run_cell(cfg, pt, static_cast<int>(i % static_cast<size_t>(cfg.trials)));
        }
    };
    const int nw = static_cast<int>(std::min<size_t>(static_cast<size_t>(worker_count(workers)), cells));
    if (nw <= 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < nw; ++t)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
    }

    std::vector<ResultRow> rows;
    for (auto &cell : out)
        for (auto &r : cell)
            rows.push_back(std::move(r));
    return rows;
}
} // namespace wpt::bench
