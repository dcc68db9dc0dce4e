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

#include <algorithm>
#include <cmath>
#include <limits>

namespace wpt
{
namespace
{
struct Factor
{
    cmat v; // n x r, X = V V^H
};

Factor factorize(const cmat &x)
{
    Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (x + x.adjoint()));
    const rvec &ev = es.eigenvalues();
    const double top = std::max(0.0, ev.maxCoeff());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i)
        if (ev(i) > 1e-14 * top && ev(i) > 0.0)
            keep.push_back(i);
    Factor f;
    f.v.resize(x.rows(), static_cast<Eigen::Index>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j)
        f.v.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]) * std::sqrt(ev(keep[j]));
    return f;
}

// Row of the homogeneous system: Re Tr{V^H A V Delta} for each Hermitian basis element.
void append_params(const cmat &at, Eigen::RowVectorXd &row, Eigen::Index offset)
{
    const Eigen::Index r = at.rows();
    Eigen::Index p = offset;
    for (Eigen::Index j = 0; j < r; ++j)
        row(p++) = at(j, j).real();
    for (Eigen::Index j = 0; j < r; ++j)
        for (Eigen::Index k = j + 1; k < r; ++k)
        {
            row(p++) = 2.0 * at(k, j).real();
            row(p++) = -2.0 * at(k, j).imag();
        }
}

cmat params_to_delta(const Eigen::VectorXd &theta, Eigen::Index offset, Eigen::Index r)
{
    cmat d = cmat::Zero(r, r);
    Eigen::Index p = offset;
    for (Eigen::Index j = 0; j < r; ++j)
        d(j, j) = theta(p++);
    for (Eigen::Index j = 0; j < r; ++j)
        for (Eigen::Index k = j + 1; k < r; ++k)
        {
            const double re = theta(p++);
            const double im = theta(p++);
            d(j, k) += cplx(re, im);
            d(k, j) += cplx(re, -im);
        }
    return d;
}
} // namespace

SdpSolution rank_reduce(const SdpSolution &solution, const SdpProblem &problem, RankReductionInfo *info)
{
    problem.validate();
    const size_t nb = problem.block_dims.size();
    if (solution.blocks.size() != nb)
        throw std::invalid_argument("rank_reduce: solution does not match the problem");
    const size_t m = problem.constraints.size();
    if (solution.free_values.size() != static_cast<size_t>(problem.num_free))
        throw std::invalid_argument("rank_reduce: free variables do not match the problem");

    std::vector<double> before(m);
    for (size_t i = 0; i < m; ++i)
        before[i] = problem.constraint_lhs(i, solution.blocks, solution.free_values);
    const double obj_before = problem.objective_value(solution.blocks, solution.free_values);

    std::vector<Factor> fac;
    for (const auto &x : solution.blocks)
        fac.push_back(factorize(x));

    auto coeff = [](const std::vector<cmat> &v, size_t bk) -> const cmat * {
        if (v.empty() || v[bk].size() == 0)
            return nullptr;
        return &v[bk];
    };
    bool has_objective = false;
    for (size_t bk = 0; bk < nb; ++bk)
        has_objective = has_objective || (coeff(problem.objective, bk) && coeff(problem.objective, bk)->norm() > 0.0);

    int steps = 0;
    for (;;)
    {
        Eigen::Index total = 0;
        for (const auto &f : fac)
            total += f.v.cols() * f.v.cols();
        if (total <= static_cast<Eigen::Index>(m))
            break;
        const bool hold_objective = has_objective && total > static_cast<Eigen::Index>(m + 1);
        const Eigen::Index rows = static_cast<Eigen::Index>(m) + (hold_objective ? 1 : 0);

        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(rows, total);
        auto fill_row = [&](Eigen::Index row, auto getter) {
            Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(total);
            Eigen::Index off = 0;
            for (size_t bk = 0; bk < nb; ++bk)
            {
                const Eigen::Index rk = fac[bk].v.cols();
                if (rk == 0)
                    continue;
                if (const cmat *a = getter(bk))
                    append_params(fac[bk].v.adjoint() * (*a) * fac[bk].v, r, off);
                off += rk * rk;
            }
            const double nrm = r.norm();
            g.row(row) = nrm > 0.0 ? Eigen::RowVectorXd(r / nrm) : r;
        };
        for (size_t i = 0; i < m; ++i)
            fill_row(static_cast<Eigen::Index>(i), [&](size_t bk) { return coeff(problem.constraints[i].coeffs, bk); });
        if (hold_objective)
            fill_row(static_cast<Eigen::Index>(m), [&](size_t bk) { return coeff(problem.objective, bk); });

        // Null-space direction: project the coordinate vector least aligned with the row space.
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g.transpose());
        const Eigen::Index rank = qr.rank();
        Eigen::MatrixXd q1 = Eigen::MatrixXd(qr.householderQ()).leftCols(rank);
        Eigen::Index best = total - 1;
        double best_norm = -1.0;
        for (Eigen::Index p = total - 1; p >= 0; --p)
        {
            const double nn = 1.0 - q1.row(p).squaredNorm();
            if (nn > best_norm + 1e-12)
            {
                best_norm = nn;
                best = p;
            }
        }
        Eigen::VectorXd theta = -q1 * q1.row(best).transpose();
        theta(best) += 1.0;
        theta.normalize();

        std::vector<cmat> delta(nb);
        double lmax = -std::numeric_limits<double>::infinity(), lmin = std::numeric_limits<double>::infinity();
        double slope = 0.0; // d objective / d alpha
        {
            Eigen::Index off = 0;
            for (size_t bk = 0; bk < nb; ++bk)
            {
                const Eigen::Index rk = fac[bk].v.cols();
                if (rk == 0)
                    continue;
                delta[bk] = params_to_delta(theta, off, rk);
                off += rk * rk;
                Eigen::SelfAdjointEigenSolver<cmat> es(delta[bk], Eigen::EigenvaluesOnly);
                lmax = std::max(lmax, es.eigenvalues().maxCoeff());
                lmin = std::min(lmin, es.eigenvalues().minCoeff());
                if (const cmat *c = coeff(problem.objective, bk))
                    slope += trace_product(fac[bk].v.adjoint() * (*c) * fac[bk].v, delta[bk]);
            }
        }
        // X(alpha) = V (I + alpha Delta) V^H stays PSD for alpha in [lo, hi].
        const double lo = lmax > 0.0 ? -1.0 / lmax : -std::numeric_limits<double>::infinity();
        const double hi = lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
        const double standard = std::abs(lmax) >= std::abs(lmin) ? lo : hi;
        double alpha = standard;
        if (!hold_objective && std::isfinite(lo) && std::isfinite(hi))
        {
            const double f_lo = lo * slope, f_hi = hi * slope;
            if (std::abs(f_lo - f_hi) > 1e-15 * (std::abs(f_lo) + std::abs(f_hi)))
                alpha = f_lo < f_hi ? lo : hi;
        }
        if (!std::isfinite(alpha))
            throw NumericalError("rank_reduce: no rank-reducing step found");

        for (size_t bk = 0; bk < nb; ++bk)
        {
            const Eigen::Index rk = fac[bk].v.cols();
            if (rk == 0)
                continue;
            const cmat wmat = cmat::Identity(rk, rk) + alpha * delta[bk];
            Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (wmat + wmat.adjoint()));
            std::vector<Eigen::Index> keep;
            for (Eigen::Index i = rk - 1; i >= 0; --i)
                if (es.eigenvalues()(i) > 1e-12)
                    keep.push_back(i);
            cmat nv(fac[bk].v.rows(), static_cast<Eigen::Index>(keep.size()));
            for (size_t j = 0; j < keep.size(); ++j)
                nv.col(static_cast<Eigen::Index>(j)) =
                    fac[bk].v * es.eigenvectors().col(keep[j]) * std::sqrt(es.eigenvalues()(keep[j]));
            fac[bk].v = nv;
        }
        ++steps;
    }

    SdpSolution out = solution;
    out.slacks.assign(m, 0.0);
    for (size_t bk = 0; bk < nb; ++bk)
        out.blocks[bk] = fac[bk].v * fac[bk].v.adjoint();
    for (size_t i = 0; i < m; ++i)
        if (problem.constraints[i].sense == ConstraintSense::LessEqual)
            out.slacks[i] = problem.constraints[i].rhs - problem.constraint_lhs(i, out.blocks, out.free_values);
    out.primal_objective = problem.objective_value(out.blocks, out.free_values);
    out.max_violation = problem.max_violation(out.blocks, out.free_values);
    if (info)
    {
        info->steps = steps;
        info->objective_change = std::abs(out.primal_objective - obj_before) / std::max(1e-300, std::abs(obj_before));
        double drift = 0.0;
        for (size_t i = 0; i < m; ++i)
            drift = std::max(drift, std::abs(problem.constraint_lhs(i, out.blocks, out.free_values) - before[i]) /
                                        (1.0 + std::abs(before[i])));
        info->max_constraint_drift = drift;
    }
    return out;
}
} // namespace wpt
