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
detail::ScaSetup che_setup(const CheInputs &in)
{
    detail::ScaSetup setup;
    setup.users = detail::che_users(in);
    setup.weights.assign(setup.users.size(), 1.0);
    setup.dim = static_cast<Eigen::Index>(in.large_scale.size()) * in.num_tones;
    setup.vector_stop = true;
    return setup;
}

// Stacked p with sum_q Lambda_q ||p_q||^2 = 1.
cvec normalize_che(const CheInputs &in, cvec p)
{
    double e = 0.0;
    for (size_t q = 0; q < in.large_scale.size(); ++q)
        e += in.large_scale[q] * p.segment(static_cast<Eigen::Index>(q) * in.num_tones, in.num_tones).squaredNorm();
    if (!(e > 0.0))
        throw std::invalid_argument("CHE design: start vector carries no energy");
    return p / std::sqrt(e);
}

cvec che_init(const CheInputs &in, const ScaConfig &cfg)
{
    const int K = static_cast<int>(in.large_scale.size()), N = in.num_tones;
    if (cfg.init == InitPoint::Custom)
    {
        if (cfg.custom_init.size() != static_cast<Eigen::Index>(K) * N)
            throw std::invalid_argument("CHE design: custom start must have K N entries");
        return normalize_che(in, cfg.custom_init);
    }
    // Uniform over users and tones.
    cvec p(static_cast<Eigen::Index>(K) * N);
    for (int q = 0; q < K; ++q)
        p.segment(static_cast<Eigen::Index>(q) * N, N).setConstant(1.0 / std::sqrt(static_cast<double>(K) * N * in.large_scale[static_cast<size_t>(q)]));
    return p;
}

PrecoderResult che_result(const CheInputs &in, const detail::ScaSetup &setup, detail::ScaOutcome &out,
                          const BetaCoefficients &b, const ChannelRealization *channels)
{
    PrecoderResult r;
    const int N = in.num_tones;
    for (size_t q = 0; q < setup.users.size(); ++q)
    {
        cvec pq = out.final.x.segment(static_cast<Eigen::Index>(q) * N, N);
        canonicalize_phase(pq);
        r.p.push_back(pq);
        r.vout_asymptotic.push_back(detail::user_vout(setup.users[q], aux_from_vector(pq, setup.users[q].coupling), b));
    }
    if (channels)
    {
        if (channels->num_users() != static_cast<int>(in.large_scale.size()) || channels->num_tones != N)
            throw std::invalid_argument("CHE design: channels do not match the inputs");
        const double power = in.energy / channels->num_antennas;
        r.s = assemble_che_precoder(r.p, *channels, power);
        r.vout = evaluate_vout(r.s, *channels, b);
    }
    r.trace = std::move(out.trace);
    return r;
}

std::vector<int> che_blocks(const CheInputs &in, std::vector<int> &user_block, std::vector<double> &kappa)
{
    const int K = static_cast<int>(in.large_scale.size());
    std::vector<int> dims(static_cast<size_t>(K), in.num_tones);
    user_block.resize(static_cast<size_t>(K));
    kappa.resize(static_cast<size_t>(K));
    for (int q = 0; q < K; ++q)
    {
        user_block[static_cast<size_t>(q)] = q;
        kappa[static_cast<size_t>(q)] = in.large_scale[static_cast<size_t>(q)]; // Xs_q = Lambda_q X_q
    }
    return dims;
}
} // namespace

cvec assemble_che_precoder(const std::vector<cvec> &p, const ChannelRealization &ch, double power)
{
    const int M = ch.num_antennas, N = ch.num_tones;
    if (p.size() != static_cast<size_t>(ch.num_users()))
        throw std::invalid_argument("assemble_che_precoder: one weight vector per user required");
    cvec s = cvec::Zero(static_cast<Eigen::Index>(M) * N);
    for (int q = 0; q < ch.num_users(); ++q)
    {
        const CouplingMatrices c = ch.coupling(q);
        for (int n = 0; n < N; ++n)
            s.segment(static_cast<Eigen::Index>(n) * M, M) += p[static_cast<size_t>(q)](n) * c.tone_channel(n).conjugate() / std::sqrt(static_cast<double>(M));
    }
    const double ns = s.norm();
    if (!(ns > 0.0))
        throw std::invalid_argument("assemble_che_precoder: assembled precoder is zero");
    return std::sqrt(power) * s / ns;
}

PrecoderResult che_wsum(const CheInputs &in, const std::vector<double> &weights, const BetaCoefficients &b,
                        const ScaConfig &cfg, const ChannelRealization *channels)
{
    auto setup = che_setup(in);
    const int K = static_cast<int>(setup.users.size()), N = in.num_tones;
    if (weights.size() != static_cast<size_t>(K))
        throw std::invalid_argument("che_wsum: one weight per user required");
    for (double w : weights)
        if (!(w >= 0.0))
            throw std::invalid_argument("che_wsum: weights must be nonnegative");
    setup.weights = weights;

    Rng rng(derive_seed(cfg.seed, {0x434845ULL}));
    int tie_user = -1;
    auto step = [&](const std::vector<AuxVars> &tp, const detail::Iterate &, TraceEntry &e) {
        // The approximate problem is block diagonal: the minimum over the
        // Lambda-weighted sphere sits in the block with the lowest eigenvalue.
        std::vector<double> lam(static_cast<size_t>(K));
        std::vector<cvec> vec(static_cast<size_t>(K));
        for (int q = 0; q < K; ++q)
        {
            const double l = in.large_scale[static_cast<size_t>(q)];
            const cmat a = weights[static_cast<size_t>(q)] * detail::user_linearized(setup.users[static_cast<size_t>(q)], tp[static_cast<size_t>(q)], b) / l;
            const auto ev = min_eigvec(HermitianMatrix(a));
            lam[static_cast<size_t>(q)] = ev.eigenvalue;
            vec[static_cast<size_t>(q)] = ev.vector / std::sqrt(l);
            e.degenerate = e.degenerate || ev.degenerate;
        }
        const double lo = *std::min_element(lam.begin(), lam.end());
        std::vector<int> tied;
        for (int q = 0; q < K; ++q)
            if (lam[static_cast<size_t>(q)] <= lo + 1e-10 * std::abs(lo))
                tied.push_back(q);
        int pick = tied.front();
        if (tied.size() > 1)
        {
            std::uniform_int_distribution<size_t> ud(0, tied.size() - 1);
            pick = tied[ud(rng)];
            tie_user = pick;
            e.degenerate = true;
        }
        e.reference_user = pick;
        detail::Iterate it;
        it.x = cvec::Zero(static_cast<Eigen::Index>(K) * N);
        it.x.segment(static_cast<Eigen::Index>(pick) * N, N) = vec[static_cast<size_t>(pick)];
        return it;
    };
    detail::Iterate init;
    init.x = che_init(in, cfg);
    auto out = detail::run_sca(setup, init, b, cfg, step);
    out.trace.tie_break_user = tie_user;
    return che_result(in, setup, out, b, channels);
}

PrecoderResult che_max_min_rr(const CheInputs &in, const BetaCoefficients &b, const ScaConfig &cfg,
                              const ChannelRealization *channels)
{
    auto setup = che_setup(in);
    setup.max_min = true;
    const int K = static_cast<int>(setup.users.size()), N = in.num_tones;
    std::vector<int> user_block;
    std::vector<double> kappa;
    const auto dims = che_blocks(in, user_block, kappa);
    const SdpOptions opts = detail::sdp_options(cfg);

    auto step = [&](const std::vector<AuxVars> &tp, const detail::Iterate &, TraceEntry &e) {
        const auto mm = detail::build_max_min_sdp(setup.users, tp, b, dims, user_block, kappa, ConstraintSense::Equal);
        const SdpSolution sol = solve_sdp(mm.relaxed, opts);
        e.sdp_status = to_string(sol.status);
        const int q0 = mm.reference_user(sol.blocks);
        e.reference_user = q0;
        SdpSolution start;
        start.blocks = sol.blocks;
        RankReductionInfo info;
        const SdpSolution red = rank_reduce(start, mm.reference_problem(q0), &info);
        e.rr_objective_change = info.objective_change;
        e.rr_constraint_drift = info.max_constraint_drift;

        detail::Iterate it;
        it.x = cvec::Zero(static_cast<Eigen::Index>(K) * N);
        double worst_ratio = 0.0;
        for (int q = 0; q < K; ++q)
        {
            const auto ed = herm_eig(HermitianMatrix(red.blocks[static_cast<size_t>(q)]));
            const double top = std::max(0.0, ed.values(N - 1));
            if (N > 1 && top > 0.0)
                worst_ratio = std::max(worst_ratio, std::max(0.0, ed.values(N - 2)) / top);
            it.x.segment(static_cast<Eigen::Index>(q) * N, N) =
                std::sqrt(top / kappa[static_cast<size_t>(q)]) * ed.vectors.col(N - 1);
        }
        e.rank_ratio = worst_ratio;
        return it;
    };
    detail::Iterate init;
    init.x = che_init(in, cfg);
    auto out = detail::run_sca(setup, init, b, cfg, step);
    return che_result(in, setup, out, b, channels);
}

PrecoderResult che_max_min_randomized(const CheInputs &in, const BetaCoefficients &b, const ScaConfig &cfg,
                                      const ChannelRealization *channels)
{
    auto setup = che_setup(in);
    setup.max_min = true;
    const int K = static_cast<int>(setup.users.size()), N = in.num_tones;
    std::vector<int> user_block;
    std::vector<double> kappa;
    const auto dims = che_blocks(in, user_block, kappa);
    const SdpOptions opts = detail::sdp_options(cfg);
    ScaConfig run_cfg = cfg;
    if (run_cfg.stop == StopRule::Frobenius)
        run_cfg.stop = StopRule::Surrogate; // this design stops on the approximate-problem value

    Rng rng(derive_seed(cfg.seed, {0x52434845ULL}));
    auto step = [&](const std::vector<AuxVars> &tp, const detail::Iterate &, TraceEntry &e) {
        const auto mm = detail::build_max_min_sdp(setup.users, tp, b, dims, user_block, kappa, ConstraintSense::Equal);
        const SdpSolution sol = solve_sdp(mm.relaxed, opts);
        e.sdp_status = to_string(sol.status);
        const int q0 = mm.reference_user(sol.blocks);
        e.reference_user = q0;

        detail::Iterate it;
        it.x = cvec::Zero(static_cast<Eigen::Index>(K) * N);
        double worst = 0.0;
        for (int q = 0; q < K; ++q)
        {
            const cmat &xs = sol.blocks[static_cast<size_t>(q)];
            const cmat b1 = q == q0 ? cmat(-mm.a[static_cast<size_t>(q)]) : mm.a[static_cast<size_t>(q)];
            const cmat root = psd_sqrt(HermitianMatrix(xs)).matrix();
            const auto ed = herm_eig(HermitianMatrix(root * b1 * root));
            const cmat qmat = ed.vectors.adjoint() * root * root * ed.vectors;
            const cvec v = rank1_preserving_vector(0.5 * (qmat + qmat.adjoint()), rng);
            const cvec ps = root * ed.vectors * v;
            const double t1 = trace_product(b1, xs), t1r = (ps.adjoint() * b1 * ps)(0, 0).real();
            const double t2 = xs.trace().real(), t2r = ps.squaredNorm();
            worst = std::max({worst, std::abs(t1 - t1r) / (1.0 + std::abs(t1)), std::abs(t2 - t2r) / (1.0 + std::abs(t2))});
            it.x.segment(static_cast<Eigen::Index>(q) * N, N) = ps / std::sqrt(kappa[static_cast<size_t>(q)]);
        }
        e.trace_residual = worst;
        return it;
    };
    detail::Iterate init;
    init.x = che_init(in, cfg);
    auto out = detail::run_sca(setup, init, b, run_cfg, step);
    return che_result(in, setup, out, b, channels);
}
} // namespace wpt
