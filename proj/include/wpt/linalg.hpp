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

#include "wpt/common.hpp"

namespace wpt
{
// Complex Hermitian matrix. The constructor stores (A + A^H) / 2, so the
// stored matrix is Hermitian to machine precision.
class HermitianMatrix
{
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const cmat &a);

    static HermitianMatrix identity(Eigen::Index n);
    static HermitianMatrix zero(Eigen::Index n);

    Eigen::Index dim() const { return m_.rows(); }
    const cmat &matrix() const { return m_; }

    HermitianMatrix operator+(const HermitianMatrix &o) const;
    HermitianMatrix operator-(const HermitianMatrix &o) const;
    HermitianMatrix operator*(double c) const;

private:
    cmat m_;
};

// Eigenvalues ascending. Each eigenvector has its first component with
// magnitude above 1e-12 made real and positive.
struct EigenDecomposition
{
    rvec values;
    cmat vectors;
};

struct ExtremeEigvec
{
    cvec vector;       // unit norm, canonical phase
    double eigenvalue; // the extreme eigenvalue
    bool degenerate;   // gap to the next eigenvalue below 1e-10 relative
};

EigenDecomposition herm_eig(const HermitianMatrix &a);

// Eigenvector of the smallest eigenvalue.
ExtremeEigvec min_eigvec(const HermitianMatrix &a);

// Eigenvector of the largest eigenvalue.
ExtremeEigvec dominant_eigvec(const HermitianMatrix &a);

// Principal square root of a PSD matrix. Eigenvalues down to -1e-10 * ||X||_F
// are clamped to zero, anything more negative throws std::invalid_argument.
HermitianMatrix psd_sqrt(const HermitianMatrix &x);

// Rotates v so that its first component above the threshold is real positive.
void canonicalize_phase(cvec &v, double threshold = 1e-12);

// Tr{A B} for Hermitian A, B (real by construction).
double trace_product(const cmat &a, const cmat &b);
} // namespace wpt
