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

#include "wpt/linalg.hpp"

#include <cmath>

namespace wpt
{
HermitianMatrix::HermitianMatrix(const cmat &a)
{
    if (a.rows() == 0 || a.rows() != a.cols())
        throw std::invalid_argument("HermitianMatrix: matrix must be square and non-empty");
    m_ = 0.5 * (a + a.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n)
{
    return HermitianMatrix(cmat::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n)
{
    return HermitianMatrix(cmat::Zero(n, n));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix &o) const
{
    return HermitianMatrix(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix &o) const
{
    return HermitianMatrix(m_ - o.m_);
}

HermitianMatrix HermitianMatrix::operator*(double c) const
{
    return HermitianMatrix(m_ * c);
}

void canonicalize_phase(cvec &v, double threshold)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        const double mag = std::abs(v(i));
        if (mag > threshold)
        {
            v *= std::conj(v(i)) / mag;
            v(i) = cplx(std::abs(v(i)), 0.0);
            return;
        }
    }
}

EigenDecomposition herm_eig(const HermitianMatrix &a)
{
    if (a.dim() == 0)
        throw std::invalid_argument("herm_eig: empty matrix");
    if (!a.matrix().allFinite())
        throw std::invalid_argument("herm_eig: non-finite input");

    Eigen::SelfAdjointEigenSolver<cmat> es(a.matrix());
    if (es.info() != Eigen::Success)
        throw NumericalError("herm_eig: eigensolver did not converge");

    EigenDecomposition out{es.eigenvalues(), es.eigenvectors()};
    for (Eigen::Index j = 0; j < out.vectors.cols(); ++j)
    {
        cvec col = out.vectors.col(j);
        col.normalize();
        canonicalize_phase(col);
        out.vectors.col(j) = col;
    }
    return out;
}

static bool is_degenerate(const rvec &w, Eigen::Index i, Eigen::Index j)
{
    if (w.size() < 2)
        return false;
    const double scale = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
    if (scale == 0.0)
        return true;
    return std::abs(w(j) - w(i)) <= 1e-10 * scale;
}

ExtremeEigvec min_eigvec(const HermitianMatrix &a)
{
    const auto ed = herm_eig(a);
    return {ed.vectors.col(0), ed.values(0), is_degenerate(ed.values, 0, 1)};
}

ExtremeEigvec dominant_eigvec(const HermitianMatrix &a)
{
    const auto ed = herm_eig(a);
    const Eigen::Index n = ed.values.size();
    if (n >= 2 && is_degenerate(ed.values, n - 2, n - 1))
    {
        // Return the first canonical vector of the top eigenspace.
        Eigen::Index first = n - 1;
        while (first > 0 && is_degenerate(ed.values, first - 1, n - 1))
            --first;
        return {ed.vectors.col(first), ed.values(n - 1), true};
    }
    return {ed.vectors.col(n - 1), ed.values(n - 1), false};
}

HermitianMatrix psd_sqrt(const HermitianMatrix &x)
{
    const auto ed = herm_eig(x);
    const double fro = x.matrix().norm();
    rvec root(ed.values.size());
    for (Eigen::Index i = 0; i < ed.values.size(); ++i)
    {
        const double lam = ed.values(i);
        if (lam < -1e-10 * fro)
            throw std::invalid_argument("psd_sqrt: matrix is not positive semidefinite");
        root(i) = lam > 0.0 ? std::sqrt(lam) : 0.0;
    }
    return HermitianMatrix(ed.vectors * root.asDiagonal() * ed.vectors.adjoint());
}

double trace_product(const cmat &a, const cmat &b)
{
    // Tr{AB} = sum_ij A_ij B_ji
    return (a.array() * b.transpose().array()).sum().real();
}
} // namespace wpt
