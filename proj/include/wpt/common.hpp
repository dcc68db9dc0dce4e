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

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>

namespace wpt
{
using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;

// Deterministic RNG used throughout; substreams come from derive_seed.
using Rng = std::mt19937_64;

// Thrown when an iterate or decomposition loses numerical integrity.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// SplitMix64 finalizer, used to derive independent substream seeds.
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys)
{
    std::uint64_t s = mix64(base);
    for (auto k : keys)
        s = mix64(s ^ mix64(k + 0x632BE59BD9B4E019ULL));
    return s;
}

// Circularly symmetric complex Gaussian with E|z|^2 = variance.
inline cplx complex_normal(Rng &rng, double variance)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    const double sd = std::sqrt(0.5 * variance);
    const double re = nd(rng);
    const double im = nd(rng);
    return {sd * re, sd * im};
}

inline double uniform_phase(Rng &rng)
{
    std::uniform_real_distribution<double> ud(0.0, 2.0 * 3.14159265358979323846);
    return ud(rng);
}
} // namespace wpt
