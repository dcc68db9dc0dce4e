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
#include "wpt/linalg.hpp"

#include <catch_amalgamated.hpp>

#include <limits>

using namespace wpt;
using namespace wpt::testing;
using Catch::Matchers::WithinAbs;

namespace
{
cmat diag2(double a, double b)
{
    cmat d = cmat::Zero(2, 2);
    d(0, 0) = a;
    d(1, 1) = b;
    return d;
}
} // namespace

TEST_CASE("HermitianMatrix symmetrizes and rejects bad shapes")
{
    Rng rng(1);
    const cmat a = random_cmat(4, 4, rng);
    const HermitianMatrix h(a);
    CHECK((h.matrix() - h.matrix().adjoint()).norm() == 0.0);
    CHECK((h.matrix() - 0.5 * (a + a.adjoint())).norm() < 1e-15);
    CHECK_THROWS_AS(HermitianMatrix(cmat(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(HermitianMatrix(cmat(0, 0)), std::invalid_argument);
    CHECK((HermitianMatrix::identity(3).matrix() - cmat::Identity(3, 3)).norm() == 0.0);
    const auto s = (h + h - h * 2.0).matrix();
    CHECK(s.norm() < 1e-14);
}

TEST_CASE("herm_eig small closed forms")
{
    auto d = herm_eig(HermitianMatrix(diag2(3, -2)));
    CHECK_THAT(d.values(0), WithinAbs(-2, 1e-15));
    CHECK_THAT(d.values(1), WithinAbs(3, 1e-15));
    CHECK(std::abs(d.vectors(1, 0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(d.vectors(0, 1) - cplx(1, 0)) < 1e-15);

    cmat x = cmat::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    d = herm_eig(HermitianMatrix(x));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK_THAT(d.values(0), WithinAbs(-1, 1e-14));
    CHECK_THAT(d.values(1), WithinAbs(1, 1e-14));
    CHECK(std::abs(d.vectors(0, 0) - r) < 1e-14);
    CHECK(std::abs(d.vectors(1, 0) + r) < 1e-14);
    CHECK(std::abs(d.vectors(0, 1) - r) < 1e-14);
    CHECK(std::abs(d.vectors(1, 1) - r) < 1e-14);
}

TEST_CASE("herm_eig reconstruction, orthonormality, trace and canonical phase")
{
    Rng rng(2);
    for (int n : {1, 3, 8, 20})
    {
        const cmat a = random_hermitian(n, rng);
        const auto d = herm_eig(HermitianMatrix(a));
        CHECK((a * d.vectors - d.vectors * d.values.cast<cplx>().asDiagonal()).norm() <= 1e-9 * (1 + a.norm()));
        CHECK((d.vectors.adjoint() * d.vectors - cmat::Identity(n, n)).norm() <= 1e-10);
        CHECK(std::abs(d.values.sum() - a.trace().real()) <= 1e-9 * (1 + std::abs(a.trace().real())));
        for (int i = 1; i < n; ++i)
            CHECK(d.values(i) >= d.values(i - 1));
        for (int j = 0; j < n; ++j)
        {
            const cvec v = d.vectors.col(j);
            Eigen::Index first = 0;
            while (std::abs(v(first)) <= 1e-12)
                ++first;
            CHECK(std::abs(v(first).imag()) == 0.0);
            CHECK(v(first).real() > 0.0);
        }
        // Pure function of the input bytes.
        const auto d2 = herm_eig(HermitianMatrix(a));
        CHECK(d2.values == d.values);
        CHECK(d2.vectors == d.vectors);
    }
}

TEST_CASE("herm_eig rejects non-finite input")
{
    cmat a = cmat::Identity(2, 2);
    a(0, 1) = a(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(herm_eig(HermitianMatrix(a)));
    a(0, 1) = a(1, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS(herm_eig(HermitianMatrix(a)));
}

TEST_CASE("min_eigvec and dominant_eigvec")
{
    auto mn = min_eigvec(HermitianMatrix(diag2(3, -2)));
    CHECK(std::abs(mn.vector(1) - cplx(1, 0)) < 1e-15);
    CHECK_FALSE(mn.degenerate);
    CHECK_THAT(mn.eigenvalue, WithinAbs(-2, 1e-15));
    auto mx = dominant_eigvec(HermitianMatrix(diag2(3, -2)));
    CHECK(std::abs(mx.vector(0) - cplx(1, 0)) < 1e-15);
    CHECK_FALSE(mx.degenerate);

    const auto deg = min_eigvec(HermitianMatrix(-cmat::Identity(2, 2)));
    CHECK(deg.degenerate);
    CHECK(std::abs(deg.vector(0) - cplx(1, 0)) < 1e-15);
    CHECK(dominant_eigvec(HermitianMatrix(-cmat::Identity(2, 2))).degenerate);

    Rng rng(3);
    const cvec h = random_cvec(5, rng);
    const auto r1 = dominant_eigvec(HermitianMatrix(h.conjugate() * h.transpose()));
    cvec expect = h.conjugate() / h.norm();
    canonicalize_phase(expect);
    CHECK((r1.vector - expect).norm() < 1e-12);
}

TEST_CASE("extreme eigenvectors beat random probes and are Rayleigh fixed points")
{
    Rng rng(4);
    const cmat a = random_hermitian(6, rng);
    const cmat p = random_psd(5, rng);
    const auto mn = min_eigvec(HermitianMatrix(a));
    const auto mx = dominant_eigvec(HermitianMatrix(p));
    const double qa = (mn.vector.adjoint() * a * mn.vector)(0, 0).real();
    const double qp = (mx.vector.adjoint() * p * mx.vector)(0, 0).real();
    CHECK(std::abs(mn.vector.norm() - 1) < 1e-14);
    int bad = 0;
    for (int i = 0; i < 10000; ++i)
    {
        const cvec v = random_unit(6, rng);
        bad += (v.adjoint() * a * v)(0, 0).real() < qa - 1e-12;
        const cvec w = random_unit(5, rng);
        bad += (w.adjoint() * p * w)(0, 0).real() > qp + 1e-12;
    }
    CHECK(bad == 0);
    // One Rayleigh-quotient step leaves the eigenvector in place.
    for (const auto &[m, e] : {std::pair{a, mn}, std::pair{p, mx}})
    {
        const double rq = (e.vector.adjoint() * m * e.vector)(0, 0).real();
        const cmat shifted = m - (rq + 1e-6) * cmat::Identity(m.rows(), m.cols());
        cvec y = shifted.fullPivLu().solve(e.vector);
        y /= y.norm();
        canonicalize_phase(y);
        CHECK((y - e.vector).norm() < 1e-8);
    }
}

TEST_CASE("psd_sqrt")
{
    CHECK((psd_sqrt(HermitianMatrix::identity(3)).matrix() - cmat::Identity(3, 3)).norm() < 1e-15);
    CHECK((psd_sqrt(HermitianMatrix(diag2(4, 9))).matrix() - diag2(2, 3)).norm() < 1e-14);
    Rng rng(5);
    for (int rank : {5, 2})
    {
        const cmat x = random_psd(5, rng, rank);
        const cmat r = psd_sqrt(HermitianMatrix(x)).matrix();
        CHECK((r * r - x).norm() <= 1e-8 * (1 + x.norm()));
        CHECK((r - r.adjoint()).norm() < 1e-14);
        CHECK(herm_eig(HermitianMatrix(r)).values.minCoeff() >= 0.0);
    }
    CHECK_THROWS_AS(psd_sqrt(HermitianMatrix(diag2(1, -0.1))), std::invalid_argument);
    // Tiny negative round-off is clamped.
    CHECK_NOTHROW(psd_sqrt(HermitianMatrix(diag2(1, -1e-13))));
}

TEST_CASE("canonicalize_phase and trace_product")
{
    cvec v(3);
    v << cplx(0, 0), cplx(0, -2), cplx(1, 1);
    canonicalize_phase(v);
    CHECK(std::abs(v(1) - cplx(2, 0)) < 1e-15);
    CHECK(std::abs(v(2) - cplx(-1, 1)) < 1e-15);
    Rng rng(6);
    const cmat a = random_hermitian(4, rng), b = random_hermitian(4, rng);
    CHECK(std::abs(trace_product(a, b) - (a * b).trace().real()) < 1e-12);
}
