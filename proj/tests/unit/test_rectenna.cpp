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

#include "test_util.hpp"
#include "wpt/rectenna.hpp"

#include <catch_amalgamated.hpp>

using namespace wpt;
using namespace wpt::testing;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

namespace
{
const BetaCoefficients beta = beta_coefficients(RectifierParams{});

// Dense M_k by enumerating every (row, column) entry of h* h^T and keeping
// the ones whose tone offset equals k.
cmat brute_mask(const cvec &h, int M, int N, int k)
{
    cmat out = cmat::Zero(M * N, M * N);
    for (int r = 0; r < M * N; ++r)
        for (int c = 0; c < M * N; ++c)
            if (c / M - r / M == k)
                out(r, c) = std::conj(h(r)) * h(c);
    return out;
}

// v_out from the tone amplitudes a_n = h_n^T s_n written out as a plain
// polynomial: beta2 sum |a|^2 + 1.5 beta4 (sum |a|^2)^2 + 3 beta4 sum_k |sum_n conj(a_n) a_{n+k}|^2.
double brute_vout(const cvec &s, const cvec &h, int M, int N)
{
    std::vector<cplx> a(N);
    for (int n = 0; n < N; ++n)
    {
        a[n] = 0;
        for (int m = 0; m < M; ++m)
            a[n] += h(n * M + m) * s(n * M + m);
    }
    double p = 0;
    for (auto v : a)
        p += std::norm(v);
    double q = 1.5 * p * p;
    for (int k = 1; k < N; ++k)
    {
        cplx t = 0;
        for (int n = 0; n + k < N; ++n)
            t += std::conj(a[n]) * a[n + k];
        q += 3 * std::norm(t);
    }
    return beta.beta2 * p + beta.beta4 * q;
}
} // namespace

TEST_CASE("beta coefficients")
{
    CHECK_THAT(beta.beta2, WithinRel(967.1179883945841, 1e-14));
    CHECK_THAT(beta.beta4, WithinRel(6030413.948912874, 1e-14));
    RectifierParams p;
    p.v_t *= 2;
    const auto b2 = beta_coefficients(p);
    CHECK_THAT(b2.beta2, WithinRel(beta.beta2 / 2, 1e-14));
    CHECK_THAT(b2.beta4, WithinRel(beta.beta4 / 8, 1e-14));
    for (double RectifierParams::*f : {&RectifierParams::r_ant, &RectifierParams::n_i, &RectifierParams::v_t})
    {
        RectifierParams bad;
        bad.*f = 0.0;
        CHECK_THROWS_AS(beta_coefficients(bad), std::invalid_argument);
    }
}

TEST_CASE("coupling matrices: layout, masks and reassembly")
{
    CHECK(layout_index(1, 2, 3) == 7);
    cvec h(2);
    h << 1, 1;
    const CouplingMatrices c(h, 1, 2);
    cmat m1(2, 2);
    m1 << 0, 1, 0, 0;
    CHECK((c.dense(1) - m1).norm() == 0.0);

    Rng rng(10);
    const int M = 2, N = 3;
    const cvec g = random_cvec(M * N, rng);
    const CouplingMatrices cg(g, M, N);
    cmat sum = cmat::Zero(M * N, M * N);
    for (int k = -(N - 1); k <= N - 1; ++k)
    {
        CHECK((cg.dense(k) - brute_mask(g, M, N, k)).norm() == 0.0);
        sum += cg.dense(k);
    }
    CHECK((sum - g.conjugate() * g.transpose()).norm() < 1e-14);
    for (int k = 1; k < N; ++k)
        CHECK((cg.dense(-k) - cg.dense(k).adjoint()).norm() == 0.0);
    CHECK(herm_eig(HermitianMatrix(cg.dense(0))).values.minCoeff() > -1e-12);

    CHECK_THROWS_AS(CouplingMatrices(random_cvec(5, rng), 2, 3), std::invalid_argument);
    CHECK_THROWS(cg.dense(3));

    std::vector<cplx> coeffs = {2.0, cplx(0, 1), 0.5};
    cmat comb = cmat::Zero(M * N, M * N);
    for (int k = 0; k < N; ++k)
        comb += coeffs[k] * cg.dense(k);
    CHECK((cg.combination(coeffs) - comb).norm() < 1e-13);
}

TEST_CASE("vout_quartic closed forms")
{
    cvec h(1), s(1);
    h << 1;
    s << 0;
    CHECK(vout_quartic(s, CouplingMatrices(h, 1, 1), beta) == 0.0);
    const double P = 0.3;
    s << std::sqrt(P);
    CHECK_THAT(vout_quartic(s, CouplingMatrices(h, 1, 1), beta),
               WithinRel(beta.beta2 * P + 1.5 * beta.beta4 * P * P, 1e-14));
    CHECK_THROWS(vout_quartic(cvec::Zero(2), CouplingMatrices(h, 1, 1), beta));
}

TEST_CASE("vout_quartic matches the polynomial and the time-domain oracle")
{
    Rng rng(11);
    for (int M = 1; M <= 3; ++M)
        for (int N = 1; N <= 4; ++N)
            for (int rep = 0; rep < 8; ++rep)
            {
                const cvec h = 0.01 * random_cvec(M * N, rng);
                const cvec s = random_cvec(M * N, rng);
                const double v = vout_quartic(s, CouplingMatrices(h, M, N), beta);
                CHECK(v >= 0.0);
                CHECK(std::abs(v - brute_vout(s, h, M, N)) <= 1e-12 * (1 + v));
                const double o = vout_time_oracle(s, h, M, N, beta);
                CHECK(std::abs(v - o) <= 1e-9 * (1 + v));
            }
}

TEST_CASE("time-domain oracle: moments and sampling checks")
{
    cvec h(1), s(1);
    h << 1;
    s << 0.02;
    // 2 a^2 cos^2 averages to a^2, 4 a^4 cos^4 to 1.5 a^4.
    const double a2 = 0.0004;
    CHECK_THAT(vout_time_oracle(s, h, 1, 1, beta), WithinRel(beta.beta2 * a2 + 1.5 * beta.beta4 * a2 * a2, 1e-12));
    CHECK(vout_time_oracle(cvec::Zero(1), h, 1, 1, beta) == 0.0);

    Rng rng(12);
    const cvec g = random_cvec(6, rng), x = random_cvec(6, rng);
    TimeSampling ts;
    ts.periods = 1.5;
    CHECK_THROWS_AS(vout_time_oracle(x, g, 2, 3, beta, ts), std::invalid_argument);
    ts = {};
    ts.first_tone_index = 2.5;
    CHECK_THROWS_AS(vout_time_oracle(x, g, 2, 3, beta, ts), std::invalid_argument);
    ts.first_tone_index = 1; // needs > (N - 1) / 2 = 1
    CHECK_THROWS_AS(vout_time_oracle(x, g, 2, 3, beta, ts), std::invalid_argument);
    ts = {};
    ts.samples_per_period = 8;
    CHECK_THROWS_AS(vout_time_oracle(x, g, 2, 3, beta, ts), std::invalid_argument);
    // Longer windows and other admissible carriers give the same average.
    const double ref = vout_time_oracle(x, g, 2, 3, beta);
    ts = {};
    ts.periods = 3;
    ts.first_tone_index = 7;
    CHECK_THAT(vout_time_oracle(x, g, 2, 3, beta, ts), WithinRel(ref, 1e-10));
}

TEST_CASE("scaling splits into quadratic and quartic parts")
{
    Rng rng(13);
    const int M = 2, N = 4;
    const cvec h = 0.01 * random_cvec(M * N, rng), s = random_cvec(M * N, rng);
    const CouplingMatrices c(h, M, N);
    const double v1 = vout_quartic(s, c, beta), v2 = vout_quartic(2.0 * s, c, beta);
    // v(c) = c^2 Q2 + c^4 Q4
    const double q4 = (v2 - 4 * v1) / 12, q2 = v1 - q4;
    const AuxVars t = aux_from_vector(s, c);
    CHECK_THAT(q2, WithinRel(beta.beta2 * t(0).real(), 1e-9));
    CHECK_THAT(vout_quartic(3.0 * s, c, beta), WithinRel(9 * q2 + 81 * q4, 1e-12));
}

TEST_CASE("a positive voltage-to-current rescale keeps the argmax")
{
    Rng rng(14);
    const int M = 2, N = 3;
    const CouplingMatrices c(0.01 * random_cvec(M * N, rng), M, N);
    const cvec s1 = random_unit(M * N, rng), s2 = random_unit(M * N, rng);
    const double scale = RectifierParams{}.i_s / (RectifierParams{}.n_i * RectifierParams{}.v_t);
    int best_v = 0, best_i = 0;
    double bv = -1, bi = -1;
    for (int g = 0; g <= 200; ++g)
    {
        const double th = g * 3.14159265358979 / 200;
        cvec s = std::cos(th) * s1 + std::sin(th) * s2;
        s /= s.norm();
        const double v = vout_quartic(s, c, beta);
        if (v > bv)
            bv = v, best_v = g;
        if (scale * v > bi)
            bi = scale * v, best_i = g;
    }
    CHECK(best_v == best_i);
}

TEST_CASE("auxiliary variables")
{
    Rng rng(15);
    const int M = 2, N = 3;
    const cvec h = random_cvec(M * N, rng);
    const CouplingMatrices c(h, M, N);
    CHECK(aux_from_gram(cmat::Zero(M * N, M * N), c).norm() == 0.0);
    const cvec s = random_cvec(M * N, rng);
    const AuxVars ts = aux_from_vector(s, c);
    const AuxVars tg = aux_from_gram(s * s.adjoint(), c);
    for (int k = 0; k < N; ++k)
        CHECK(std::abs(ts(k) - (s.adjoint() * c.dense(k) * s)(0, 0)) < 1e-12 * (1 + std::abs(ts(k))));
    CHECK((ts - tg).norm() < 1e-12 * (1 + ts.norm()));

    const cmat x = random_psd(M * N, rng);
    const AuxVars t = aux_from_gram(x, c);
    CHECK(t(0).real() >= 0.0);
    CHECK(t(0).imag() == 0.0);
    for (int k = 0; k < N; ++k)
    {
        cplx acc = 0;
        for (int r = 0; r < M * N; ++r)
            for (int col = 0; col < M * N; ++col)
                if (col / M - r / M == k)
                    acc += std::conj(h(r)) * h(col) * x(col, r);
        CHECK(std::abs(t(k) - acc) < 1e-10 * (1 + std::abs(acc)));
    }
    cmat bad = x;
    bad(0, 0) += cplx(0, 1.0);
    CHECK_THROWS_AS(aux_from_gram(bad, c), NumericalError);
}

TEST_CASE("frequency-domain representations")
{
    Rng rng(16);
    const int M = 3, N = 4;
    const cvec h = random_cvec(M * N, rng);
    const auto fn = freq_coupling_norm(h, M, N);
    CHECK((fn.coupling.dense(0) - cmat::Identity(N, N)).norm() > 0);
    // NORM with MRT assembly equals the full model.
    const cvec p = random_cvec(N, rng);
    cvec s(M * N);
    for (int n = 0; n < N; ++n)
    {
        const cvec hn = h.segment(n * M, M);
        s.segment(n * M, M) = p(n) * hn.conjugate() / hn.norm();
    }
    CHECK_THAT(vout_freq(p, fn, beta), WithinRel(vout_quartic(s, CouplingMatrices(h, M, N), beta), 1e-12));
    CHECK(vout_freq(cvec::Zero(N), fn, beta) == 0.0);

    cvec g(M);
    g << 0.3, cplx(0, 0.4), 0.0;
    const auto f1 = freq_coupling_norm(g, M, 1);
    cvec one(1);
    one << std::sqrt(0.7);
    CHECK_THAT(vout_freq(one, f1, beta), WithinRel(beta.beta2 * 0.7 * 0.25 + 1.5 * beta.beta4 * 0.49 * 0.0625, 1e-13));

    // EFFECTIVE with arbitrary beams equals the full model of s_n = p_n w_n.
    const cmat beams = random_cmat(M, N, rng);
    const auto fe = freq_coupling_effective(h, beams, M, N);
    for (int n = 0; n < N; ++n)
        s.segment(n * M, M) = p(n) * beams.col(n);
    CHECK_THAT(vout_freq(p, fe, beta), WithinRel(vout_quartic(s, CouplingMatrices(h, M, N), beta), 1e-12));

    // ASYMPTOTIC: M'_0 = I, ones on the k-th diagonal.
    const double E = 2.0, L = 1e-6;
    const auto fa = freq_coupling_asymptotic(N, E, L);
    CHECK((fa.coupling.dense(0) - cmat::Identity(N, N)).norm() == 0.0);
    for (int k = 1; k < N; ++k)
        for (int r = 0; r < N; ++r)
            for (int col = 0; col < N; ++col)
                CHECK(fa.coupling.dense(k)(r, col) == (col - r == k ? cplx(1) : cplx(0)));
    CHECK(fa.lin_scale() == E * L * L);
    CHECK(fa.quart_scale() == E * E * L * L * L * L);
    const cvec pu = cvec::Constant(N, 1.0 / std::sqrt(N * L));
    CHECK_THAT(vout_freq(pu, fa, beta), WithinRel(vout_asymptotic_uniform(E, L, N, beta), 1e-12));

    FreqCouplingMatrices broken = fa;
    broken.energy.reset();
    CHECK_THROWS(vout_freq(pu, broken, beta));
    CHECK_THROWS(freq_coupling_asymptotic(N, -1, L));
}

TEST_CASE("asymptotic uniform voltage")
{
    const double E = 1.5, L = 2e-6;
    const double base = beta.beta2 * E * L + 1.5 * beta.beta4 * E * E * L * L;
    CHECK_THAT(vout_asymptotic_uniform(E, L, 1, beta), WithinRel(base, 1e-14));
    CHECK_THAT(vout_asymptotic_uniform(E, L, 2, beta), WithinRel(base + 0.75 * beta.beta4 * E * E * L * L, 1e-14));
    // Third term over N approaches beta4 E^2 L^2; at N = 64 the ratio is 8001/8192.
    const double third = vout_asymptotic_uniform(E, L, 64, beta) - base;
    CHECK_THAT(third / 64 / (beta.beta4 * E * E * L * L), WithinRel(8001.0 / 8192.0, 1e-12));
    CHECK(vout_asymptotic_uniform(E, L, 4096, beta) - base > 0);
    const double big = (vout_asymptotic_uniform(E, L, 4096, beta) - base) / 4096 / (beta.beta4 * E * E * L * L);
    CHECK(std::abs(big - 1) < 1e-3);
}

TEST_CASE("weighted sum voltage")
{
    Rng rng(17);
    const int M = 2, N = 3;
    std::vector<CouplingMatrices> users = {CouplingMatrices(random_cvec(M * N, rng), M, N),
                                           CouplingMatrices(random_cvec(M * N, rng), M, N)};
    const cvec s = 0.05 * random_cvec(M * N, rng);
    const std::vector<double> w1 = {1.0};
    CHECK(weighted_sum_vout(s, {users[0]}, w1, beta) == vout_quartic(s, users[0], beta));
    const std::vector<double> w0 = {0.0, 0.0};
    CHECK(weighted_sum_vout(s, users, w0, beta) == 0.0);
    const std::vector<double> w = {0.3, 1.7};
    CHECK_THAT(weighted_sum_vout(s, users, w, beta),
               WithinRel(0.3 * vout_quartic(s, users[0], beta) + 1.7 * vout_quartic(s, users[1], beta), 1e-12));
    const std::vector<double> neg = {1.0, -0.1};
    CHECK_THROWS_AS(weighted_sum_vout(s, users, neg, beta), std::invalid_argument);
}
