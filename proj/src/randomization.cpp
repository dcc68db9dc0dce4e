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

#include "wpt/sdp.hpp"

#include <cmath>

namespace wpt
{
cvec rank1_preserving_vector(const cmat &q, Rng &rng)
{
    if (q.rows() == 0 || q.rows() != q.cols())
        throw std::invalid_argument("rank1_preserving_vector: matrix must be square and non-empty");
    const Eigen::Index r = q.rows();
    const double scale = q.norm();
    cvec v(r);
    v(0) = 1.0;
    for (Eigen::Index i = 1; i < r; ++i)
    {
        cplx c = 0.0;
        for (Eigen::Index k = 0; k < i; ++k)
            c += std::conj(v(k)) * q(k, i);
        const double mag = std::abs(c);
        if (mag <= 1e-14 * scale || mag == 0.0)
            v(i) = std::polar(1.0, uniform_phase(rng));
        else
            v(i) = cplx(0.0, 1.0) * std::conj(c) / mag; // Re{c v_i} = 0
    }
    return v;
}

std::vector<cvec> randomize_gaussian_rank1(const cmat &x, int count, Rng &rng)
{
    if (count < 1)
        throw std::invalid_argument("randomize_gaussian_rank1: need at least one candidate");
    const auto ed = herm_eig(HermitianMatrix(x));
    rvec root = ed.values.cwiseMax(0.0).cwiseSqrt();
    const cmat base = ed.vectors * root.asDiagonal();
    std::vector<cvec> out;
    out.reserve(static_cast<size_t>(count));
    for (int t = 0; t < count; ++t)
    {
        cvec v(x.rows());
        for (Eigen::Index i = 0; i < v.size(); ++i)
            v(i) = std::polar(1.0, uniform_phase(rng));
        out.push_back(base * v);
    }
    return out;
}
} // namespace wpt
