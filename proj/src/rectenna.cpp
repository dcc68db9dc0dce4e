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
#include <string>

namespace wpt
{
void RectifierParams::validate() const
{
    if (!(r_ant > 0.0) || !(n_i > 0.0) || !(v_t > 0.0) || !(i_s > 0.0) || !std::isfinite(r_ant) ||
        !std::isfinite(n_i) || !std::isfinite(v_t) || !std::isfinite(i_s))
        throw std::invalid_argument("RectifierParams: all parameters must be finite and positive");
}

BetaCoefficients beta_coefficients(const RectifierParams &p)
{
    p.validate();
    const double nv = p.n_i * p.v_t;
    return {p.r_ant / (2.0 * nv), p.r_ant * p.r_ant / (24.0 * nv * nv * nv)};
}

CouplingMatrices::CouplingMatrices(const cvec &h, int num_antennas, int num_tones)
    : h_(h), m_(num_antennas), n_(num_tones)
{
    if (num_antennas < 1 || num_tones < 1)
        throw std::invalid_argument("CouplingMatrices: dimensions must be positive");
    if (h.size() != dim())
        throw std::invalid_argument("CouplingMatrices: channel length must equal M N");
    if (!h.allFinite())
        throw std::invalid_argument("CouplingMatrices: non-finite channel");
}

void CouplingMatrices::check_k(int k) const
{
    if (k <= -n_ || k >= n_)
        throw std::out_of_range("CouplingMatrices: k out of range " + std::to_string(k));
}

cvec CouplingMatrices::tone_amplitudes(const cvec &s) const
{
    if (s.size() != dim())
        throw std::invalid_argument("CouplingMatrices: precoder length must equal M N");
    cvec a(n_);
    for (int n = 0; n < n_; ++n)
        a(n) = h_.segment(static_cast<Eigen::Index>(n) * m_, m_).transpose() *
               s.segment(static_cast<Eigen::Index>(n) * m_, m_);
    return a;
}

cplx CouplingMatrices::quadratic(const cvec &s, int k) const
{
    check_k(k);
    const cvec a = tone_amplitudes(s);
    const int kk = std::abs(k);
    cplx acc = 0.0;
    for (int n = 0; n + kk < n_; ++n)
        acc += std::conj(a(n)) * a(n + kk);
    return k >= 0 ? acc : std::conj(acc);
}

cplx CouplingMatrices::trace_with(const cmat &x, int k) const
{
    check_k(k);
    if (x.rows() != dim() || x.cols() != dim())
        throw std::invalid_argument("CouplingMatrices: Gram matrix must be MN x MN");
    const int kk = std::abs(k);
    cplx acc = 0.0;
    for (int n = 0; n + kk < n_; ++n)
    {
        const Eigen::Index r = static_cast<Eigen::Index>(n + kk) * m_;
        const Eigen::Index c = static_cast<Eigen::Index>(n) * m_;
        acc += (tone_channel(n + kk).transpose() * x.block(r, c, m_, m_) * tone_channel(n).conjugate())(0, 0);
    }
    return k >= 0 ? acc : std::conj(acc);
}

cmat CouplingMatrices::dense(int k) const
{
    check_k(k);
    if (k < 0)
        return dense(-k).adjoint();
    cmat out = cmat::Zero(dim(), dim());
    for (int n = 0; n + k < n_; ++n)
        out.block(static_cast<Eigen::Index>(n) * m_, static_cast<Eigen::Index>(n + k) * m_, m_, m_) =
            tone_channel(n).conjugate() * tone_channel(n + k).transpose();
    return out;
}

cmat CouplingMatrices::combination(std::span<const cplx> coeffs) const
{
    if (coeffs.size() > static_cast<size_t>(n_))
        throw std::invalid_argument("CouplingMatrices: more coefficients than tones");
    cmat out = cmat::Zero(dim(), dim());
    for (int n = 0; n < n_; ++n)
    {
        const cvec hc = tone_channel(n).conjugate();
        for (size_t k = 0; k < coeffs.size() && n + static_cast<int>(k) < n_; ++k)
        {
            if (coeffs[k] == cplx(0.0))
                continue;
            out.block(static_cast<Eigen::Index>(n) * m_, static_cast<Eigen::Index>(n + k) * m_, m_, m_) +=
                coeffs[k] * hc * tone_channel(n + static_cast<int>(k)).transpose();
        }
    }
    return out;
}

AuxVars aux_from_gram(const cmat &x, const CouplingMatrices &c)
{
    AuxVars t(c.tones());
    for (int k = 0; k < c.tones(); ++k)
        t(k) = c.trace_with(x, k);
    if (!t.allFinite())
        throw NumericalError("aux_from_gram: non-finite auxiliary variables");
    if (std::abs(t(0).imag()) > 1e-10 * (1.0 + std::abs(t(0))))
        throw NumericalError("aux_from_gram: t_0 is not real, Gram matrix is not Hermitian");
    t(0) = cplx(t(0).real(), 0.0);
    return t;
}

AuxVars aux_from_vector(const cvec &s, const CouplingMatrices &c)
{
    const cvec a = c.tone_amplitudes(s);
    AuxVars t(c.tones());
    for (int k = 0; k < c.tones(); ++k)
    {
        cplx acc = 0.0;
        for (int n = 0; n + k < c.tones(); ++n)
            acc += std::conj(a(n)) * a(n + k);
        t(k) = acc;
    }
    t(0) = cplx(t(0).real(), 0.0);
    return t;
}

double vout_from_aux(const AuxVars &t, const BetaCoefficients &b, double lin_scale, double quart_scale)
{
    double tail = 0.0;
    for (Eigen::Index k = 1; k < t.size(); ++k)
        tail += std::norm(t(k));
    return b.beta2 * lin_scale * t(0).real() +
           quart_scale * b.beta4 * (1.5 * std::norm(t(0)) + 3.0 * tail);
}

double vout_quartic(const cvec &s, const CouplingMatrices &c, const BetaCoefficients &b)
{
    return vout_from_aux(aux_from_vector(s, c), b);
}

double FreqCouplingMatrices::lin_scale() const
{
    if (variant != FreqVariant::Asymptotic)
        return 1.0;
    return *energy * *large_scale * *large_scale;
}

double FreqCouplingMatrices::quart_scale() const
{
    if (variant != FreqVariant::Asymptotic)
        return 1.0;
    const double l2 = *large_scale * *large_scale;
    return *energy * *energy * l2 * l2;
}

FreqCouplingMatrices freq_coupling_norm(const cvec &h, int num_antennas, int num_tones)
{
    const CouplingMatrices full(h, num_antennas, num_tones);
    cvec g(num_tones);
    for (int n = 0; n < num_tones; ++n)
        g(n) = full.tone_channel(n).norm();
    return {FreqVariant::Norm, CouplingMatrices(g, 1, num_tones), std::nullopt, std::nullopt};
}

FreqCouplingMatrices freq_coupling_effective(const cvec &h, const cmat &beams, int num_antennas,
                                             int num_tones)
{
    const CouplingMatrices full(h, num_antennas, num_tones);
    if (beams.rows() != num_antennas || beams.cols() != num_tones)
        throw std::invalid_argument("freq_coupling_effective: beams must be M x N");
    // Effective scalar gain g_n = h_n^T w_n, so that g^* g^T = h_e h_e^H.
    cvec g(num_tones);
    for (int n = 0; n < num_tones; ++n)
        g(n) = (full.tone_channel(n).transpose() * beams.col(n))(0, 0);
    return {FreqVariant::Effective, CouplingMatrices(g, 1, num_tones), std::nullopt, std::nullopt};
}

FreqCouplingMatrices freq_coupling_asymptotic(int num_tones, double energy, double large_scale)
{
    if (!(energy > 0.0) || !(large_scale > 0.0))
        throw std::invalid_argument("freq_coupling_asymptotic: E and Lambda must be positive");
    return {FreqVariant::Asymptotic, CouplingMatrices(cvec::Ones(num_tones), 1, num_tones), energy,
            large_scale};
}

double vout_freq(const cvec &p, const FreqCouplingMatrices &f, const BetaCoefficients &b)
{
    if (f.variant == FreqVariant::Asymptotic && (!f.energy || !f.large_scale))
        throw std::invalid_argument("vout_freq: asymptotic variant needs E and Lambda");
    return vout_from_aux(aux_from_vector(p, f.coupling), b, f.lin_scale(), f.quart_scale());
}

double vout_asymptotic_uniform(double energy, double large_scale, int num_tones, const BetaCoefficients &b)
{
    if (num_tones < 1 || !(energy > 0.0) || !(large_scale > 0.0))
        throw std::invalid_argument("vout_asymptotic_uniform: invalid arguments");
    const double e = energy, l = large_scale, n = num_tones;
    return b.beta2 * e * l + 1.5 * b.beta4 * e * e * l * l +
           b.beta4 * e * e * l * l * n * (n - 1.0) * (2.0 * n - 1.0) / (2.0 * n * n);
}

double weighted_sum_vout(const cvec &s, const std::vector<CouplingMatrices> &users,
                         std::span<const double> weights, const BetaCoefficients &b)
{
    if (weights.size() != users.size())
        throw std::invalid_argument("weighted_sum_vout: one weight per user required");
    double acc = 0.0;
    for (size_t q = 0; q < users.size(); ++q)
    {
        if (!(weights[q] >= 0.0))
            throw std::invalid_argument("weighted_sum_vout: weights must be nonnegative");
        acc += weights[q] * vout_quartic(s, users[q], b);
    }
    return acc;
}
} // namespace wpt
