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

#include "wpt/channel.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace wpt
{
void PropagationConfig::validate() const
{
    if (!(carrier_hz > 0.0) || !(bandwidth_hz > 0.0))
        throw std::invalid_argument("PropagationConfig: carrier and bandwidth must be positive");
    if (num_tones < 1 || num_antennas < 1 || num_users < 1)
        throw std::invalid_argument("PropagationConfig: M, N and K must be positive");
    if (distance_m.size() != 1 && distance_m.size() != static_cast<size_t>(num_users))
        throw std::invalid_argument("PropagationConfig: give one distance or one per user");
    for (double d : distance_m)
        if (!(d > 0.0))
            throw std::invalid_argument("PropagationConfig: distances must be positive");
    if (!(breakpoint_m > 0.0) || !(exponent_beyond > 0.0))
        throw std::invalid_argument("PropagationConfig: invalid breakpoint model");
}

double PropagationConfig::distance(int user) const
{
    return distance_m.size() == 1 ? distance_m[0] : distance_m.at(static_cast<size_t>(user));
}

double path_loss_db(double distance_m, const PropagationConfig &cfg)
{
    if (!(distance_m > 0.0))
        throw std::invalid_argument("path_loss_db: distance must be positive");
    auto fspl = [&](double d) { return 20.0 * std::log10(4.0 * std::numbers::pi * d * cfg.carrier_hz / speed_of_light); };
    if (distance_m <= cfg.breakpoint_m)
        return fspl(distance_m);
    return fspl(cfg.breakpoint_m) + 10.0 * cfg.exponent_beyond * std::log10(distance_m / cfg.breakpoint_m);
}

std::vector<double> tone_grid(const PropagationConfig &cfg)
{
    if (cfg.num_tones < 1 || !(cfg.bandwidth_hz > 0.0))
        throw std::invalid_argument("tone_grid: invalid tone count or bandwidth");
    const int n_tones = cfg.num_tones;
    const double df = cfg.bandwidth_hz / n_tones;
    std::vector<double> f(static_cast<size_t>(n_tones));
    for (int n = 1; n <= n_tones; ++n)
        f[static_cast<size_t>(n - 1)] = cfg.carrier_hz + (n - (n_tones + 1) / 2.0) * df;
    if (!(f[0] > (n_tones - 1) * df / 2.0))
        throw std::invalid_argument("tone_grid: first tone must exceed (N-1) df / 2");
    return f;
}

double large_scale_gain(const PropagationConfig &cfg, int user)
{
    const double pl = path_loss_db(cfg.distance(user), cfg);
    double g = std::pow(10.0, (cfg.tx_gain_db + cfg.rx_gain_db - pl) / 10.0);
    if (cfg.pdp_scaling == PdpScaling::Tabulated)
        g *= resolve_pdp(cfg.pdp_id).tabulated_gain;
    return g;
}

CouplingMatrices ChannelRealization::coupling(int user) const
{
    return CouplingMatrices(h.at(static_cast<size_t>(user)), num_antennas, num_tones);
}

std::vector<CouplingMatrices> ChannelRealization::couplings() const
{
    std::vector<CouplingMatrices> out;
    for (int q = 0; q < num_users(); ++q)
        out.push_back(coupling(q));
    return out;
}

ChannelRealization gen_realization(const PropagationConfig &cfg)
{
    cfg.validate();
    const PowerDelayProfile pdp = resolve_pdp(cfg.pdp_id);
    const auto freqs = tone_grid(cfg);
    const int M = cfg.num_antennas, N = cfg.num_tones, L = static_cast<int>(pdp.powers.size());

    // Tap phase rotation per tone, relative to the carrier.
    cmat rot(N, L);
    for (int n = 0; n < N; ++n)
        for (int l = 0; l < L; ++l)
            rot(n, l) = std::polar(1.0, -2.0 * std::numbers::pi * (freqs[static_cast<size_t>(n)] - cfg.carrier_hz) *
                                            pdp.delays_s[static_cast<size_t>(l)]);

    ChannelRealization r;
    r.num_antennas = M;
    r.num_tones = N;
    for (int q = 0; q < cfg.num_users; ++q)
    {
        double lambda = std::pow(10.0, (cfg.tx_gain_db + cfg.rx_gain_db - path_loss_db(cfg.distance(q), cfg)) / 10.0);
        if (cfg.pdp_scaling == PdpScaling::Tabulated)
            lambda *= pdp.tabulated_gain;
        cvec h(static_cast<Eigen::Index>(M) * N);
        for (int m = 0; m < M; ++m)
        {
            Rng rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(m)}));
            cvec taps(L);
            for (int l = 0; l < L; ++l)
                taps(l) = complex_normal(rng, pdp.powers[static_cast<size_t>(l)]);
            const cvec resp = std::sqrt(lambda) * (rot * taps);
            for (int n = 0; n < N; ++n)
                h(layout_index(m, n, M)) = resp(n);
        }
        r.h.push_back(std::move(h));
        r.large_scale.push_back(lambda);
    }
    return r;
}

void write_channel_csv(std::ostream &os, const ChannelRealization &r)
{
    const auto old_prec = os.precision(17);
    os << "user,tone,antenna,re,im\n";
    for (int q = 0; q < r.num_users(); ++q)
        for (int n = 0; n < r.num_tones; ++n)
            for (int m = 0; m < r.num_antennas; ++m)
            {
                const cplx v = r.h[static_cast<size_t>(q)](layout_index(m, n, r.num_antennas));
                os << q << ',' << n << ',' << m << ',' << v.real() << ',' << v.imag() << '\n';
            }
    os.precision(old_prec);
}
} // namespace wpt
