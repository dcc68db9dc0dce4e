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
PrecoderResult su_wpt(const cvec &h, int num_antennas, int num_tones, double power, const BetaCoefficients &b,
                      const ScaConfig &cfg)
{
    if (!(power > 0.0))
        throw std::invalid_argument("su_wpt: power must be positive");
    const auto f = freq_coupling_norm(h, num_antennas, num_tones);
    const int N = num_tones;
    const rvec gains = f.coupling.channel().real();
    std::vector<bool> active(static_cast<size_t>(N));
    int n_active = 0;
    for (int n = 0; n < N; ++n)
    {
        active[static_cast<size_t>(n)] = gains(n) > 0.0;
        n_active += active[static_cast<size_t>(n)] ? 1 : 0;
    }
    if (n_active == 0)
        throw std::invalid_argument("su_wpt: channel is zero on every tone");

    // Zero-gain tones carry no power.
    auto restrict = [&](cvec p) {
        for (int n = 0; n < N; ++n)
            if (!active[static_cast<size_t>(n)])
                p(n) = 0.0;
        return cvec(std::sqrt(power) * p / p.norm());
    };

    detail::ScaSetup setup;
    setup.users.push_back({f.coupling, 0, 1.0, 1.0});
    setup.weights = {1.0};
    setup.dim = N;

    detail::Iterate init;
    switch (cfg.init)
    {
    case InitPoint::UpMrt:
        init.x = restrict(cvec::Ones(N));
        break;
    case InitPoint::Ass:
    {
        Eigen::Index best;
        gains.maxCoeff(&best);
        init.x = cvec::Zero(N);
        init.x(best) = std::sqrt(power);
        break;
    }
    case InitPoint::Custom:
    {
        cvec p(N);
        if (cfg.custom_init.size() == N)
            p = cfg.custom_init;
        else if (cfg.custom_init.size() == static_cast<Eigen::Index>(num_antennas) * N)
            for (int n = 0; n < N; ++n)
                p(n) = cfg.custom_init.segment(static_cast<Eigen::Index>(n) * num_antennas, num_antennas).norm();
        else
            throw std::invalid_argument("su_wpt: custom start must have N or MN entries");
        init.x = restrict(p);
        break;
    }
    }

    auto step = [&](const std::vector<AuxVars> &tp, const detail::Iterate &, TraceEntry &e) {
        const cmat a = detail::user_linearized(setup.users[0], tp[0], b);
        const auto ev = min_eigvec(HermitianMatrix(a));
        e.degenerate = ev.degenerate;
        detail::Iterate it;
        it.x = restrict(ev.vector);
        canonicalize_phase(it.x);
        return it;
    };
    auto out = detail::run_sca(setup, init, b, cfg, step);

    PrecoderResult r;
    cvec p = out.final.x;
    canonicalize_phase(p);
    r.p = {p};
    r.s = cvec::Zero(static_cast<Eigen::Index>(num_antennas) * N);
    const CouplingMatrices full(h, num_antennas, N);
    for (int n = 0; n < N; ++n)
        if (active[static_cast<size_t>(n)])
        {
            const cvec hn = full.tone_channel(n);
            r.s.segment(static_cast<Eigen::Index>(n) * num_antennas, num_antennas) = p(n) * hn.conjugate() / hn.norm();
        }
    r.vout = {vout_quartic(r.s, full, b)};
    r.trace = std::move(out.trace);
    return r;
}
} // namespace wpt
