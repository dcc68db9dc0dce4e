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
#include <numeric>
#include <stdexcept>

namespace wpt
{
namespace
{
void check_user(const ChannelRealization &ch, int user, const char *who)
{
    if (user < 0 || user >= ch.num_users())
        throw std::invalid_argument(std::string(who) + ": user index out of range");
}

void check_power(double power, const char *who)
{
    if (!(power > 0.0) || !std::isfinite(power))
        throw std::invalid_argument(std::string(who) + ": power must be positive");
}

PrecoderResult finish(cvec s, const ChannelRealization &ch, const BetaCoefficients &b)
{
    PrecoderResult r;
    r.vout = evaluate_vout(s, ch, b);
    r.s = std::move(s);
    r.trace.status = AlgStatus::Converged;
    return r;
}
} // namespace

PrecoderResult baseline_ass(const ChannelRealization &ch, int user, double power, const BetaCoefficients &b)
{
    check_user(ch, user, "baseline_ass");
    check_power(power, "baseline_ass");
    const int M = ch.num_antennas, N = ch.num_tones;
    const CouplingMatrices c = ch.coupling(user);
    int best = -1;
    double best_gain = 0.0;
    for (int n = 0; n < N; ++n)
    {
        const double g = c.tone_channel(n).squaredNorm();
        if (g > best_gain)
        {
            best_gain = g;
            best = n;
        }
    }
    if (best < 0)
        throw std::invalid_argument("baseline_ass: every tone has zero gain");
    cvec s = cvec::Zero(static_cast<Eigen::Index>(M) * N);
    const cvec h = c.tone_channel(best);
    s.segment(static_cast<Eigen::Index>(best) * M, M) = std::sqrt(power) * h.conjugate() / h.norm();
    auto r = finish(std::move(s), ch, b);
    r.p = {cvec::Zero(N)};
    r.p[0](best) = std::sqrt(power);
    return r;
}

PrecoderResult baseline_up_mrt(const ChannelRealization &ch, int user, double power, const BetaCoefficients &b)
{
    check_user(ch, user, "baseline_up_mrt");
    check_power(power, "baseline_up_mrt");
    const int M = ch.num_antennas, N = ch.num_tones;
    const CouplingMatrices c = ch.coupling(user);
    int active = 0;
    for (int n = 0; n < N; ++n)
        active += c.tone_channel(n).norm() > 0.0;
    if (active == 0)
        throw std::invalid_argument("baseline_up_mrt: every tone has zero gain");
    // Zero-gain tones get no power.
    const double amp = std::sqrt(power / active);
    cvec s = cvec::Zero(static_cast<Eigen::Index>(M) * N);
    cvec p = cvec::Zero(N);
    for (int n = 0; n < N; ++n)
    {
        const cvec h = c.tone_channel(n);
        const double nrm = h.norm();
        if (nrm > 0.0)
        {
            s.segment(static_cast<Eigen::Index>(n) * M, M) = amp * h.conjugate() / nrm;
            p(n) = amp;
        }
    }
    auto r = finish(std::move(s), ch, b);
    r.p = {p};
    return r;
}

PrecoderResult baseline_mu_up(const ChannelRealization &ch, double power, const BetaCoefficients &b)
{
    check_power(power, "baseline_mu_up");
    return finish(detail::mu_up_precoder(ch, power), ch, b);
}

std::vector<double> fairness_weights(const ChannelRealization &ch, double power, const BetaCoefficients &b)
{
    std::vector<double> inv;
    for (int q = 0; q < ch.num_users(); ++q)
    {
        const double a = baseline_up_mrt(ch, q, power, b).vout[static_cast<size_t>(q)];
        if (!(a > 0.0))
            throw std::invalid_argument("fairness_weights: a user receives no voltage under UP-MRT");
        inv.push_back(1.0 / a);
    }
    const double total = std::accumulate(inv.begin(), inv.end(), 0.0);
    for (double &w : inv)
        w /= total;
    return inv;
}

std::vector<double> tdma_compose(const std::vector<double> &single_user_vout, const std::vector<double> &shares)
{
    if (single_user_vout.size() != shares.size())
        throw std::invalid_argument("tdma_compose: one share per user required");
    double sum = 0.0;
    for (double s : shares)
    {
        if (!(s >= 0.0))
            throw std::invalid_argument("tdma_compose: shares must be nonnegative");
        sum += s;
    }
    if (sum > 1.0 + 1e-12)
        throw std::invalid_argument("tdma_compose: shares must sum to at most one");
    std::vector<double> v(shares.size());
    for (size_t q = 0; q < shares.size(); ++q)
        v[q] = shares[q] * single_user_vout[q];
    return v;
}
} // namespace wpt
