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

#include "wpt/rectenna.hpp"

#include <cmath>
#include <numbers>

namespace wpt
{
double vout_time_oracle(const cvec &s, const cvec &h, int num_antennas, int num_tones,
                        const BetaCoefficients &b, const TimeSampling &sampling)
{
    const CouplingMatrices c(h, num_antennas, num_tones);
    const cvec a = c.tone_amplitudes(s);
    const int n_tones = num_tones;

    if (!(sampling.periods >= 1.0) || sampling.periods != std::floor(sampling.periods))
        throw std::invalid_argument("vout_time_oracle: window must cover an integer number of periods");

    // Sum frequencies of y^4 cannot reach DC when w_1 > (N-1) dw / 2.
    double k0 = sampling.first_tone_index;
    if (k0 == 0.0)
        k0 = std::floor((n_tones - 1) / 2.0) + 1.0;
    if (k0 != std::floor(k0))
        throw std::invalid_argument("vout_time_oracle: first tone must sit on the dw grid");
    if (!(k0 > (n_tones - 1) / 2.0))
        throw std::invalid_argument("vout_time_oracle: first tone violates w_1 > (N-1) dw / 2");

    const int spp = sampling.samples_per_period > 0 ? sampling.samples_per_period : 64 * n_tones;
    // Uniform averaging is exact for harmonics below the sample count.
    const double highest = 4.0 * (k0 + n_tones - 1);
    if (spp <= highest)
        throw std::invalid_argument("vout_time_oracle: too few samples per period for the quartic term");

    const long total = static_cast<long>(spp) * static_cast<long>(sampling.periods);
    const double two_pi = 2.0 * std::numbers::pi;
    double acc2 = 0.0, acc4 = 0.0;
    for (long i = 0; i < total; ++i)
    {
        cplx z = 0.0;
        for (int n = 0; n < n_tones; ++n)
        {
            // Reduce the phase index exactly before converting to an angle.
            const long idx = (static_cast<long>(k0) + n) * (i % spp) % spp;
            z += a(n) * std::polar(1.0, two_pi * static_cast<double>(idx) / spp);
        }
        const double y = std::sqrt(2.0) * z.real();
        const double y2 = y * y;
        acc2 += y2;
        acc4 += y2 * y2;
    }
    return (b.beta2 * acc2 + b.beta4 * acc4) / static_cast<double>(total);
}
} // namespace wpt
