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

#include "wpt/linalg.hpp"

#include <optional>
#include <span>
#include <vector>

namespace wpt
{
// Diode and antenna parameters of the single-diode rectenna.
struct RectifierParams
{
    double r_ant = 50.0;   // antenna resistance [Ohm]
    double n_i = 1.0;      // diode ideality factor
    double v_t = 0.02585;  // thermal voltage [V]
    double i_s = 5e-6;     // saturation current [A]; cancels out of the design problem

    void validate() const;
};

// Quadratic and quartic coefficients of the truncated diode expansion.
struct BetaCoefficients
{
    double beta2 = 0.0;
    double beta4 = 0.0;
};

BetaCoefficients beta_coefficients(const RectifierParams &p);

// Position of antenna m on tone n (both 0-based) in a stacked MN vector.
// Tones are the outer index: [h_1; h_2; ...; h_N] with each h_n of length M.
inline Eigen::Index layout_index(int m, int n, int num_antennas)
{
    return static_cast<Eigen::Index>(n) * num_antennas + m;
}

// The matrices M_k built from one user's stacked channel h (length MN).
// M = h^* h^T; M_k keeps the k-th block diagonal (blocks (n, n+k)) and
// M_{-k} = M_k^H. The blocks are formed on demand from the per-tone channels.
class CouplingMatrices
{
public:
    CouplingMatrices() = default;
    CouplingMatrices(const cvec &h, int num_antennas, int num_tones);

    int antennas() const { return m_; }
    int tones() const { return n_; }
    Eigen::Index dim() const { return static_cast<Eigen::Index>(m_) * n_; }
    const cvec &channel() const { return h_; }
    cvec tone_channel(int n) const { return h_.segment(static_cast<Eigen::Index>(n) * m_, m_); }

    // Received complex amplitude per tone, a_n = h_n^T s_n.
    cvec tone_amplitudes(const cvec &s) const;

    // s^H M_k s for k in [-(N-1), N-1].
    cplx quadratic(const cvec &s, int k) const;

    // Tr{M_k X} for k in [-(N-1), N-1].
    cplx trace_with(const cmat &x, int k) const;

    // Dense MN x MN matrix M_k.
    cmat dense(int k) const;

    // sum_{k=0}^{N-1} coeffs[k] M_k as a dense matrix.
    cmat combination(std::span<const cplx> coeffs) const;

private:
    void check_k(int k) const;

    cvec h_;
    int m_ = 0;
    int n_ = 0;
};

// Auxiliary variables t_k = Tr{M_k X}, k = 0..N-1.
using AuxVars = cvec;

// t from a Gram matrix X (MN x MN). Throws NumericalError if Im t_0 is
// larger than 1e-10 (1 + |t_0|).
AuxVars aux_from_gram(const cmat &x, const CouplingMatrices &c);

// t from a precoder s, equal to aux_from_gram(s s^H).
AuxVars aux_from_vector(const cvec &s, const CouplingMatrices &c);

// beta2 * l * t_0 + 1.5 beta4 q |t_0|^2 + 3 beta4 q sum_{k>=1} |t_k|^2.
double vout_from_aux(const AuxVars &t, const BetaCoefficients &b, double lin_scale = 1.0,
                     double quart_scale = 1.0);

// Truncated-model output voltage of precoder s.
double vout_quartic(const cvec &s, const CouplingMatrices &c, const BetaCoefficients &b);

// Sampling of the time-domain reference evaluation. Time is measured in
// units of the fundamental period 2 pi / dw.
struct TimeSampling
{
    int samples_per_period = 0;    // 0 selects 64 N
    double periods = 1.0;          // must be a positive integer
    double first_tone_index = 0.0; // w_1 / dw; 0 selects the smallest admissible integer
};

// Synthesizes y(t) = sqrt(2) Re{sum_n h_n^T s_n exp(j w_n t)} and averages
// beta2 y^2 + beta4 y^4 over the sampling window.
double vout_time_oracle(const cvec &s, const cvec &h, int num_antennas, int num_tones,
                        const BetaCoefficients &b, const TimeSampling &sampling = {});

enum class FreqVariant
{
    Norm,       // gains ||h_n||
    Effective,  // gains h_n^T w_n for fixed spatial beams w_n
    Asymptotic, // unit gains, scaled by E Lambda^2 and E^2 Lambda^4
};

// N x N coupling matrices of a frequency-only design.
struct FreqCouplingMatrices
{
    FreqVariant variant = FreqVariant::Norm;
    CouplingMatrices coupling; // single antenna, N tones
    std::optional<double> energy;       // E = P M, Asymptotic only
    std::optional<double> large_scale;  // Lambda, Asymptotic only

    double lin_scale() const;   // 1, or E Lambda^2
    double quart_scale() const; // 1, or E^2 Lambda^4
};

FreqCouplingMatrices freq_coupling_norm(const cvec &h, int num_antennas, int num_tones);

// beams holds w_n as columns (M x N).
FreqCouplingMatrices freq_coupling_effective(const cvec &h, const cmat &beams, int num_antennas,
                                             int num_tones);

FreqCouplingMatrices freq_coupling_asymptotic(int num_tones, double energy, double large_scale);

double vout_freq(const cvec &p, const FreqCouplingMatrices &f, const BetaCoefficients &b);

// Asymptotic voltage for p = 1 / sqrt(N Lambda) on every tone.
double vout_asymptotic_uniform(double energy, double large_scale, int num_tones,
                               const BetaCoefficients &b);

// sum_q w_q v_out,q(s).
double weighted_sum_vout(const cvec &s, const std::vector<CouplingMatrices> &users,
                         std::span<const double> weights, const BetaCoefficients &b);
} // namespace wpt
