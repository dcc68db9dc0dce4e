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

namespace wpt
{
ChannelRealization gen_hardened(const std::vector<double> &large_scale, int num_antennas, int num_tones,
                                HardenMode mode, std::uint64_t seed)
{
    const int K = static_cast<int>(large_scale.size());
    if (K < 1 || num_antennas < 1 || num_tones < 1)
        throw std::invalid_argument("gen_hardened: M, N and K must be positive");
    for (double l : large_scale)
        if (!(l > 0.0))
            throw std::invalid_argument("gen_hardened: large-scale gains must be positive");
    if (mode == HardenMode::Exact && num_antennas < K * num_tones)
        throw std::invalid_argument("gen_hardened: exact mode needs M >= K N");

    const int M = num_antennas, N = num_tones;
    ChannelRealization r;
    r.num_antennas = M;
    r.num_tones = N;
    r.large_scale = large_scale;
    for (int q = 0; q < K; ++q)
    {
        cvec h = cvec::Zero(static_cast<Eigen::Index>(M) * N);
        const double lambda = large_scale[static_cast<size_t>(q)];
        if (mode == HardenMode::Exact)
        {
            // Pair (q, n) gets the standard basis direction q N + n.
            for (int n = 0; n < N; ++n)
                h(layout_index(q * N + n, n, M)) = std::sqrt(M * lambda);
        }
        else
        {
            for (int m = 0; m < M; ++m)
            {
                Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(m)}));
                for (int n = 0; n < N; ++n)
                    h(layout_index(m, n, M)) = complex_normal(rng, lambda);
            }
        }
        r.h.push_back(std::move(h));
    }
    return r;
}
} // namespace wpt
