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

#include "sca_common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wpt
{
namespace
{
detail::ScaSetup max_min_setup(const ChannelRealization &ch)
{
    detail::ScaSetup setup;
    for (int q = 0; q < ch.num_users(); ++q)
        setup.users.push_back({ch.coupling(q), 0, 1.0, 1.0});
    setup.weights.assign(static_cast<size_t>(ch.num_users()), 1.0);
    setup.max_min = true;
    setup.dim = static_cast<Eigen::Index>(ch.num_antennas) * ch.num_tones;
    return setup;
}

detail::MaxMinSdp single_block_sdp(const detail::ScaSetup &setup, const std::vector<AuxVars> &tp, double power,
                                   const BetaCoefficients &b)
{
    // Xs = X / P, so the budget row reads Tr{Xs} <= 1.
    const std::vector<int> user_block(setup.users.size(), 0);
    return detail::build_max_min_sdp(setup.users, tp, b, {static_cast<int>(setup.dim)}, user_block, {1.0 / power},
                                     ConstraintSense::LessEqual);
}

double top_eigen_ratio(const cmat &x, cvec *top_vec, double *top_val)
{
    const auto ed = herm_eig(HermitianMatrix(x));
    const Eigen::Index n = ed.values.size();
    if (top_vec)
        *top_vec = ed.vectors.col(n - 1);
    if (top_val)
        *top_val = std::max(0.0, ed.values(n - 1));
    if (n < 2 || !(ed.values(n - 1) > 0.0))
        return 0.0;
    return std::max(0.0, ed.values(n - 2)) / ed.values(n - 1);
}
} // namespace

PrecoderResult max_min_rr(const ChannelRealization &ch, double power, const BetaCoefficients &b, const ScaConfig &cfg)
{
    if (ch.num_users() > 3)
        throw std::invalid_argument("max_min_rr: rank reduction guarantees rank one only for K <= 3");
    if (!(power > 0.0))
        throw std::invalid_argument("max_min_rr: power must be positive");
    const auto setup = max_min_setup(ch);
    detail::Iterate init;
    init.x = detail::initial_precoder(ch, setup.weights, power, cfg);
    const SdpOptions opts = detail::sdp_options(cfg);

    auto step = [&](const std::vector<AuxVars> &tp, const detail::Iterate &, TraceEntry &e) {
        const auto mm = single_block_sdp(setup, tp, power, b);
        const SdpSolution sol = solve_sdp(mm.relaxed, opts);
        e.sdp_status = to_string(sol.status);
        const int q0 = mm.reference_user(sol.blocks);
        e.reference_user = q0;

        const SdpProblem ref = mm.reference_problem(q0);
        SdpSolution start;
        start.blocks = sol.blocks;
        RankReductionInfo info;
        const SdpSolution red = rank_reduce(start, ref, &info);
        e.rr_objective_change = info.objective_change;
        e.rr_constraint_drift = info.max_constraint_drift;

        cvec u;
        double lam = 0.0;
        e.rank_ratio = top_eigen_ratio(red.blocks[0], &u, &lam);
        detail::Iterate it;
        it.x = std::sqrt(power * lam) * u;
        return it;
    };
    auto out = detail::run_sca(setup, init, b, cfg, step);

    PrecoderResult r;
    // The voltage grows with the precoder scale, so the full budget is used.
    r.s = std::sqrt(power) * out.final.x / out.final.x.norm();
    r.vout = evaluate_vout(r.s, ch, b);
    r.trace = std::move(out.trace);
    return r;
}

PrecoderResult max_min_rand(const ChannelRealization &ch, double power, const BetaCoefficients &b,
                            const ScaConfig &cfg)
{
    if (!(power > 0.0))
        throw std::invalid_argument("max_min_rand: power must be positive");
    if (cfg.randomizations < 1)
        throw std::invalid_argument("max_min_rand: need at least one randomization");
    const auto setup = max_min_setup(ch);
    detail::Iterate init;
    init.x = detail::initial_precoder(ch, setup.weights, power, cfg);
    const SdpOptions opts = detail::sdp_options(cfg);

    auto step = [&](const std::vector<AuxVars> &tp, const detail::Iterate &, TraceEntry &e) {
        const auto mm = single_block_sdp(setup, tp, power, b);
        const SdpSolution sol = solve_sdp(mm.relaxed, opts);
        e.sdp_status = to_string(sol.status);
        e.reference_user = mm.reference_user(sol.blocks);
        e.rank_ratio = top_eigen_ratio(sol.blocks[0], nullptr, nullptr);
        detail::Iterate it;
        it.rank_one = false;
        it.X = power * 0.5 * (sol.blocks[0] + sol.blocks[0].adjoint());
        return it;
    };
    auto out = detail::run_sca(setup, init, b, cfg, step);

    Rng rng(derive_seed(cfg.seed, {0x52414E44ULL}));
    const cmat x = out.final.gram();
    const auto candidates = randomize_gaussian_rank1(x, cfg.randomizations, rng);
    double best = -std::numeric_limits<double>::infinity();
    cvec best_s;
    for (const auto &cand : candidates)
    {
        if (!(cand.norm() > 0.0))
            continue;
        const cvec s = std::sqrt(power) * cand / cand.norm();
        const auto v = evaluate_vout(s, ch, b);
        const double mv = *std::min_element(v.begin(), v.end());
        if (mv > best)
        {
            best = mv;
            best_s = s;
        }
    }

    PrecoderResult r;
    r.trace = std::move(out.trace);
    const auto v0 = evaluate_vout(init.x, ch, b);
    const double init_min = *std::min_element(v0.begin(), v0.end());
    if (best_s.size() == 0 || best < init_min)
    {
        r.s = init.x;
        r.trace.notes = "randomization fell below the initial point; initial precoder returned";
    }
    else
        r.s = best_s;
    r.vout = evaluate_vout(r.s, ch, b);
    return r;
}
} // namespace wpt
