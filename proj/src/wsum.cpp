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

#include <cmath>

namespace wpt
{
namespace
{
void check_weights(const std::vector<double> &w, int users)
{
    if (w.size() != static_cast<size_t>(users))
        throw std::invalid_argument("wsum: one weight per user required");
    double total = 0.0;
    for (double v : w)
    {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("wsum: weights must be finite and nonnegative");
        total += v;
    }
    if (!(total > 0.0))
        throw std::invalid_argument("wsum: at least one weight must be positive");
}

// Minimum eigenvector of sum_q w_q A_q, scaled to the power budget.
detail::ApStep eigen_step(const detail::ScaSetup &setup, double power, const BetaCoefficients &b)
{
    return [&setup, power, &b](const std::vector<AuxVars> &tp, const detail::Iterate &, TraceEntry &e) {
        cmat a = cmat::Zero(setup.dim, setup.dim);
        for (size_t q = 0; q < setup.users.size(); ++q)
            if (setup.weights[q] != 0.0)
                a += setup.weights[q] * detail::user_linearized(setup.users[q], tp[q], b);
        const auto ev = min_eigvec(HermitianMatrix(a));
        e.degenerate = ev.degenerate;
        detail::Iterate it;
        it.x = std::sqrt(power) * ev.vector;
        return it;
    };
}
} // namespace

PrecoderResult wsum(const ChannelRealization &ch, const std::vector<double> &weights, double power,
                    const BetaCoefficients &b, const ScaConfig &cfg)
{
    check_weights(weights, ch.num_users());
    if (!(power > 0.0))
        throw std::invalid_argument("wsum: power must be positive");
    detail::ScaSetup setup;
    for (int q = 0; q < ch.num_users(); ++q)
        setup.users.push_back({ch.coupling(q), 0, 1.0, 1.0});
    setup.weights = weights;
    setup.dim = static_cast<Eigen::Index>(ch.num_antennas) * ch.num_tones;

    detail::Iterate init;
    init.x = detail::initial_precoder(ch, weights, power, cfg);
    auto out = detail::run_sca(setup, init, b, cfg, eigen_step(setup, power, b));

    PrecoderResult r;
    r.s = out.final.x;
    r.vout = evaluate_vout(r.s, ch, b);
    r.trace = std::move(out.trace);
    return r;
}

PrecoderResult wsum_s(const ChannelRealization &ch, const std::vector<double> &weights, double power,
                      const BetaCoefficients &b, const ScaConfig &cfg)
{
    check_weights(weights, ch.num_users());
    if (!(power > 0.0))
        throw std::invalid_argument("wsum_s: power must be positive");
    const int M = ch.num_antennas, N = ch.num_tones;

    cmat beams(M, N);
    rvec strength(N);
    for (int n = 0; n < N; ++n)
    {
        cmat r = cmat::Zero(M, M);
        for (int q = 0; q < ch.num_users(); ++q)
        {
            const cvec hn = ch.coupling(q).tone_channel(n);
            r += weights[static_cast<size_t>(q)] * hn.conjugate() * hn.transpose();
        }
        const auto d = dominant_eigvec(HermitianMatrix(r));
        beams.col(n) = d.vector;
        strength(n) = d.eigenvalue;
    }

    detail::ScaSetup setup;
    for (int q = 0; q < ch.num_users(); ++q)
        setup.users.push_back({freq_coupling_effective(ch.h[static_cast<size_t>(q)], beams, M, N).coupling, 0, 1.0, 1.0});
    setup.weights = weights;
    setup.dim = N;

    detail::Iterate init;
    switch (cfg.init)
    {
    case InitPoint::UpMrt:
        init.x = cvec::Constant(N, std::sqrt(power / N));
        break;
    case InitPoint::Ass:
    {
        Eigen::Index best;
        strength.maxCoeff(&best);
        init.x = cvec::Zero(N);
        init.x(best) = std::sqrt(power);
        break;
    }
    case InitPoint::Custom:
        if (cfg.custom_init.size() != N || !(cfg.custom_init.norm() > 0.0))
            throw std::invalid_argument("wsum_s: custom start must be a nonzero N vector");
        init.x = std::sqrt(power) * cfg.custom_init / cfg.custom_init.norm();
        break;
    }

    auto out = detail::run_sca(setup, init, b, cfg, eigen_step(setup, power, b));

    PrecoderResult r;
    cvec p = out.final.x;
    canonicalize_phase(p);
    r.p = {p};
    r.s = cvec::Zero(static_cast<Eigen::Index>(M) * N);
    for (int n = 0; n < N; ++n)
        r.s.segment(static_cast<Eigen::Index>(n) * M, M) = p(n) * beams.col(n);
    r.vout = evaluate_vout(r.s, ch, b);
    r.trace = std::move(out.trace);
    return r;
}
} // namespace wpt
