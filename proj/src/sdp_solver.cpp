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
bool is_zero(const cmat &a) { return a.size() == 0; }

double coeff_free(const std::vector<double> &v, int f) { return v.empty() ? 0.0 : v[static_cast<size_t>(f)]; }

cmat herm(const cmat &a) { return 0.5 * (a + a.adjoint()); }

// Largest step a with X + a dX >= 0 (infinity if unbounded).
double max_step(const cmat &x, const cmat &dx)
{
    Eigen::LLT<cmat> llt(x);
    if (llt.info() != Eigen::Success)
        return 0.0;
    const cmat linv_dx = llt.matrixL().solve(dx);
    const cmat w = llt.matrixL().solve(linv_dx.adjoint());
    Eigen::SelfAdjointEigenSolver<cmat> es(herm(w), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

double max_step_vec(const std::vector<double> &s, const std::vector<double> &ds)
{
    double a = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < s.size(); ++i)
        if (ds[i] < 0.0)
            a = std::min(a, -s[i] / ds[i]);
    return a;
}

// Scaled working copy of the problem.
struct Work
{
    int nb = 0, m = 0, nf = 0;
    std::vector<int> dims;
    std::vector<cmat> c;                  // per block
    std::vector<double> cf;               // per free var
    std::vector<std::vector<cmat>> a;     // [i][b]
    std::vector<std::vector<double>> af;  // [i][f]
    std::vector<int> slack_of;            // constraint -> slack index or -1
    int ns = 0;
    rvec b;
    rvec row_scale;
    double obj_scale = 1.0;
};

Work make_work(const SdpProblem &p)
{
    Work w;
    w.nb = static_cast<int>(p.block_dims.size());
    w.m = static_cast<int>(p.constraints.size());
    w.nf = p.num_free;
    w.dims = p.block_dims;
    w.b.resize(w.m);
    w.row_scale.resize(w.m);

    double cnorm2 = 0.0;
    for (int bk = 0; bk < w.nb; ++bk)
    {
        const cmat &cb = p.objective.empty() ? cmat() : p.objective[static_cast<size_t>(bk)];
        w.c.push_back(is_zero(cb) ? cmat::Zero(w.dims[static_cast<size_t>(bk)], w.dims[static_cast<size_t>(bk)]) : herm(cb));
        cnorm2 += w.c.back().squaredNorm();
    }
    for (int f = 0; f < w.nf; ++f)
    {
        w.cf.push_back(coeff_free(p.free_objective, f));
        cnorm2 += w.cf.back() * w.cf.back();
    }
    w.obj_scale = cnorm2 > 0.0 ? 1.0 / std::sqrt(cnorm2) : 1.0;
    for (auto &cb : w.c)
        cb *= w.obj_scale;
    for (auto &cf : w.cf)
        cf *= w.obj_scale;

    w.a.resize(static_cast<size_t>(w.m));
    w.af.resize(static_cast<size_t>(w.m));
    w.slack_of.assign(static_cast<size_t>(w.m), -1);
    for (int i = 0; i < w.m; ++i)
    {
        const auto &con = p.constraints[static_cast<size_t>(i)];
        double n2 = 0.0;
        for (int bk = 0; bk < w.nb; ++bk)
        {
            const cmat &ab = con.coeffs.empty() ? cmat() : con.coeffs[static_cast<size_t>(bk)];
            const int d = w.dims[static_cast<size_t>(bk)];
            w.a[static_cast<size_t>(i)].push_back(is_zero(ab) ? cmat::Zero(d, d) : herm(ab));
            n2 += w.a[static_cast<size_t>(i)].back().squaredNorm();
        }
        for (int f = 0; f < w.nf; ++f)
        {
            w.af[static_cast<size_t>(i)].push_back(coeff_free(con.free_coeffs, f));
            n2 += w.af[static_cast<size_t>(i)].back() * w.af[static_cast<size_t>(i)].back();
        }
        const double r = n2 > 0.0 ? 1.0 / std::sqrt(n2) : 1.0;
        w.row_scale(i) = r;
        for (auto &ab : w.a[static_cast<size_t>(i)])
            ab *= r;
        for (auto &v : w.af[static_cast<size_t>(i)])
            v *= r;
        w.b(i) = con.rhs * r;
        if (con.sense == ConstraintSense::LessEqual)
            w.slack_of[static_cast<size_t>(i)] = w.ns++;
    }
    return w;
}

double inner(const cmat &a, const cmat &b) { return trace_product(a, b); }

// Re Tr{A W} for a general square W.
double inner_general(const cmat &a, const cmat &w) { return (a.array() * w.transpose().array()).sum().real(); }
} // namespace

const char *to_string(SdpStatus s)
{
    switch (s)
    {
    case SdpStatus::Optimal:
        return "OPTIMAL";
    case SdpStatus::MaxIter:
        return "MAX_ITER";
    case SdpStatus::Infeasible:
        return "INFEASIBLE";
    }
    return "UNKNOWN";
}

void SdpProblem::validate() const
{
    const size_t nb = block_dims.size();
    if (nb == 0)
        throw std::invalid_argument("SdpProblem: at least one block is required");
    for (int d : block_dims)
        if (d < 1)
            throw std::invalid_argument("SdpProblem: block dimensions must be positive");
    if (num_free < 0)
        throw std::invalid_argument("SdpProblem: negative free-variable count");
    auto check_block = [&](const cmat &a, size_t bk, const char *what) {
        if (is_zero(a))
            return;
        const int d = block_dims[bk];
        if (a.rows() != d || a.cols() != d)
            throw std::invalid_argument(std::string("SdpProblem: ") + what + " has the wrong block size");
        if (!a.allFinite())
            throw std::invalid_argument(std::string("SdpProblem: ") + what + " is not finite");
        if ((a - a.adjoint()).norm() > 1e-10 * (1.0 + a.norm()))
            throw std::invalid_argument(std::string("SdpProblem: ") + what + " is not Hermitian");
    };
    if (!objective.empty() && objective.size() != nb)
        throw std::invalid_argument("SdpProblem: objective needs one entry per block");
    for (size_t bk = 0; bk < objective.size(); ++bk)
        check_block(objective[bk], bk, "objective");
    if (!free_objective.empty() && free_objective.size() != static_cast<size_t>(num_free))
        throw std::invalid_argument("SdpProblem: free objective needs one entry per free variable");
    for (const auto &con : constraints)
    {
        if (!con.coeffs.empty() && con.coeffs.size() != nb)
            throw std::invalid_argument("SdpProblem: constraint needs one coefficient per block");
        for (size_t bk = 0; bk < con.coeffs.size(); ++bk)
            check_block(con.coeffs[bk], bk, "constraint coefficient");
        if (!con.free_coeffs.empty() && con.free_coeffs.size() != static_cast<size_t>(num_free))
            throw std::invalid_argument("SdpProblem: constraint needs one coefficient per free variable");
        if (!std::isfinite(con.rhs))
            throw std::invalid_argument("SdpProblem: non-finite right-hand side");
    }
    // Compactness: some LE/EQ row with a positive definite coefficient on the
    // block, PSD coefficients elsewhere and no free variables.
    for (size_t bk = 0; bk < nb; ++bk)
    {
        bool bounded = false;
        for (const auto &con : constraints)
        {
            if (con.coeffs.empty() || is_zero(con.coeffs[bk]))
                continue;
            bool free_zero = std::all_of(con.free_coeffs.begin(), con.free_coeffs.end(), [](double v) { return v == 0.0; });
            if (!free_zero)
                continue;
            bool ok = true;
            for (size_t o = 0; o < nb && ok; ++o)
            {
                if (is_zero(con.coeffs[o]))
                    continue;
                Eigen::SelfAdjointEigenSolver<cmat> es(herm(con.coeffs[o]), Eigen::EigenvaluesOnly);
                const double lmin = es.eigenvalues()(0);
                ok = o == bk ? lmin > 0.0 : lmin >= -1e-14 * es.eigenvalues().cwiseAbs().maxCoeff();
            }
            if (ok)
            {
                bounded = true;
                break;
            }
        }
        if (!bounded)
            throw std::invalid_argument("SdpProblem: block " + std::to_string(bk) + " has no trace bound");
    }
}

double SdpProblem::objective_value(const std::vector<cmat> &blocks, const std::vector<double> &free) const
{
    double v = objective_offset;
    for (size_t bk = 0; bk < objective.size(); ++bk)
        if (!is_zero(objective[bk]))
            v += inner(objective[bk], blocks[bk]);
    for (int f = 0; f < num_free; ++f)
        v += coeff_free(free_objective, f) * free[static_cast<size_t>(f)];
    return v;
}

double SdpProblem::constraint_lhs(size_t i, const std::vector<cmat> &blocks, const std::vector<double> &free) const
{
    const auto &con = constraints.at(i);
    double v = 0.0;
    for (size_t bk = 0; bk < con.coeffs.size(); ++bk)
        if (!is_zero(con.coeffs[bk]))
            v += inner(con.coeffs[bk], blocks[bk]);
    for (int f = 0; f < num_free; ++f)
        v += coeff_free(con.free_coeffs, f) * free[static_cast<size_t>(f)];
    return v;
}

double SdpProblem::max_violation(const std::vector<cmat> &blocks, const std::vector<double> &free) const
{
    double worst = 0.0;
    for (size_t i = 0; i < constraints.size(); ++i)
    {
        const double diff = constraint_lhs(i, blocks, free) - constraints[i].rhs;
        const double viol = constraints[i].sense == ConstraintSense::Equal ? std::abs(diff) : std::max(0.0, diff);
        worst = std::max(worst, viol / (1.0 + std::abs(constraints[i].rhs)));
    }
    return worst;
}

SdpSolution solve_sdp(const SdpProblem &problem, const SdpOptions &opt)
{
    problem.validate();
    Work w = make_work(problem);
    const int nb = w.nb, m = w.m, nf = w.nf, ns = w.ns;

    int ntot = ns;
    double max_dim = 1.0;
    for (int d : w.dims)
    {
        ntot += d;
        max_dim = std::max(max_dim, static_cast<double>(d));
    }

    // Infeasible starting point.
    double xi = std::max(10.0, std::sqrt(max_dim));
    for (int i = 0; i < m; ++i)
        xi = std::max(xi, max_dim * (1.0 + std::abs(w.b(i))));
    double eta = std::max(10.0, std::sqrt(max_dim));

    std::vector<cmat> X, Z;
    for (int d : w.dims)
    {
        X.push_back(xi * cmat::Identity(d, d));
        Z.push_back(eta * cmat::Identity(d, d));
    }
    std::vector<double> s(static_cast<size_t>(ns), xi), z(static_cast<size_t>(ns), eta), u(static_cast<size_t>(nf), 0.0);
    rvec y = rvec::Zero(m);

    const double bnorm = w.b.norm();
    double cnorm2 = 0.0;
    for (const auto &cb : w.c)
        cnorm2 += cb.squaredNorm();
    for (double v : w.cf)
        cnorm2 += v * v;
    const double cnorm = std::sqrt(cnorm2);

    SdpSolution sol;
    double step_factor = 0.9;

    std::vector<cmat> Rd(static_cast<size_t>(nb));
    rvec rp(m);
    std::vector<double> rds(static_cast<size_t>(ns)), ru(static_cast<size_t>(nf));

    auto residuals = [&](double &pobj, double &dobj, double &comp, double &pinf, double &dinf) {
        pobj = 0.0;
        for (int bk = 0; bk < nb; ++bk)
            pobj += inner(w.c[static_cast<size_t>(bk)], X[static_cast<size_t>(bk)]);
        for (int f = 0; f < nf; ++f)
            pobj += w.cf[static_cast<size_t>(f)] * u[static_cast<size_t>(f)];
        dobj = w.b.dot(y);
        for (int i = 0; i < m; ++i)
        {
            double lhs = 0.0;
            for (int bk = 0; bk < nb; ++bk)
                lhs += inner(w.a[static_cast<size_t>(i)][static_cast<size_t>(bk)], X[static_cast<size_t>(bk)]);
            for (int f = 0; f < nf; ++f)
                lhs += w.af[static_cast<size_t>(i)][static_cast<size_t>(f)] * u[static_cast<size_t>(f)];
            if (int k = w.slack_of[static_cast<size_t>(i)]; k >= 0)
                lhs += s[static_cast<size_t>(k)];
            rp(i) = w.b(i) - lhs;
        }
        double d2 = 0.0;
        for (int bk = 0; bk < nb; ++bk)
        {
            cmat r = w.c[static_cast<size_t>(bk)] - Z[static_cast<size_t>(bk)];
            for (int i = 0; i < m; ++i)
                r -= y(i) * w.a[static_cast<size_t>(i)][static_cast<size_t>(bk)];
            Rd[static_cast<size_t>(bk)] = r;
            d2 += r.squaredNorm();
        }
        for (int i = 0; i < m; ++i)
            if (int k = w.slack_of[static_cast<size_t>(i)]; k >= 0)
            {
                rds[static_cast<size_t>(k)] = -y(i) - z[static_cast<size_t>(k)];
                d2 += rds[static_cast<size_t>(k)] * rds[static_cast<size_t>(k)];
            }
        for (int f = 0; f < nf; ++f)
        {
            double r = w.cf[static_cast<size_t>(f)];
            for (int i = 0; i < m; ++i)
                r -= w.af[static_cast<size_t>(i)][static_cast<size_t>(f)] * y(i);
            ru[static_cast<size_t>(f)] = r;
            d2 += r * r;
        }
        comp = 0.0;
        for (int bk = 0; bk < nb; ++bk)
            comp += inner(X[static_cast<size_t>(bk)], Z[static_cast<size_t>(bk)]);
        for (int k = 0; k < ns; ++k)
            comp += s[static_cast<size_t>(k)] * z[static_cast<size_t>(k)];
        pinf = rp.norm() / (1.0 + bnorm);
        dinf = std::sqrt(d2) / (1.0 + cnorm);
    };

    int iter = 0;
    for (;; ++iter)
    {
        double pobj, dobj, comp, pinf, dinf;
        residuals(pobj, dobj, comp, pinf, dinf);
        const double denom = 1.0 + std::abs(pobj) + std::abs(dobj);
        const double po = pobj / w.obj_scale + problem.objective_offset, du = dobj / w.obj_scale + problem.objective_offset;
        // The reported gap is measured on the caller's scale, so both have to pass.
        const double relgap = std::max(std::max(std::abs(pobj - dobj), comp) / denom,
                                       std::abs(po - du) / (1.0 + std::abs(po) + std::abs(du)));
        sol.history.push_back({po, du, comp / w.obj_scale, pinf, dinf});

        if (relgap <= opt.gap_tol && pinf <= 0.1 * opt.feas_tol && dinf <= 0.1 * opt.feas_tol)
        {
            sol.status = SdpStatus::Optimal;
            break;
        }
        // Diverging dual objective with a nearly feasible dual: primal infeasible.
        if (dobj > 1e8 * (1.0 + std::abs(pobj) + cnorm) && dinf <= 1e-6)
        {
            sol.status = SdpStatus::Infeasible;
            break;
        }
        if (iter >= opt.max_iter)
        {
            sol.status = SdpStatus::MaxIter;
            break;
        }
        const double mu = comp / ntot;

        // Schur complement.
        std::vector<cmat> Zinv(static_cast<size_t>(nb));
        for (int bk = 0; bk < nb; ++bk)
        {
            Eigen::LLT<cmat> llt(Z[static_cast<size_t>(bk)]);
            if (llt.info() != Eigen::Success)
                throw NumericalError("solve_sdp: dual iterate lost positive definiteness");
            Zinv[static_cast<size_t>(bk)] = herm(llt.solve(cmat::Identity(w.dims[static_cast<size_t>(bk)], w.dims[static_cast<size_t>(bk)])));
        }
        std::vector<std::vector<cmat>> G(static_cast<size_t>(m), std::vector<cmat>(static_cast<size_t>(nb)));
        for (int j = 0; j < m; ++j)
            for (int bk = 0; bk < nb; ++bk)
                G[static_cast<size_t>(j)][static_cast<size_t>(bk)] =
                    X[static_cast<size_t>(bk)] * w.a[static_cast<size_t>(j)][static_cast<size_t>(bk)] * Zinv[static_cast<size_t>(bk)];
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m + nf, m + nf);
        for (int i = 0; i < m; ++i)
        {
            for (int j = 0; j <= i; ++j)
            {
                double v = 0.0;
                for (int bk = 0; bk < nb; ++bk)
                    v += inner_general(w.a[static_cast<size_t>(i)][static_cast<size_t>(bk)], G[static_cast<size_t>(j)][static_cast<size_t>(bk)]);
                K(i, j) = v;
                K(j, i) = v;
            }
            if (int k = w.slack_of[static_cast<size_t>(i)]; k >= 0)
                K(i, i) += s[static_cast<size_t>(k)] / z[static_cast<size_t>(k)];
            for (int f = 0; f < nf; ++f)
            {
                K(i, m + f) = w.af[static_cast<size_t>(i)][static_cast<size_t>(f)];
                K(m + f, i) = w.af[static_cast<size_t>(i)][static_cast<size_t>(f)];
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(K);

        std::vector<cmat> XRdZ(static_cast<size_t>(nb));
        for (int bk = 0; bk < nb; ++bk)
            XRdZ[static_cast<size_t>(bk)] = X[static_cast<size_t>(bk)] * Rd[static_cast<size_t>(bk)] * Zinv[static_cast<size_t>(bk)];

        struct Dir
        {
            std::vector<cmat> dX, dZ;
            std::vector<double> ds, dz, du;
            rvec dy;
        };

        // corr: per-block second-order terms and slack products, or empty.
        auto direction = [&](double sigma_mu, const std::vector<cmat> *corr, const std::vector<double> *corr_s) {
            Dir d;
            std::vector<cmat> T(static_cast<size_t>(nb));
            for (int bk = 0; bk < nb; ++bk)
            {
                T[static_cast<size_t>(bk)] = sigma_mu * Zinv[static_cast<size_t>(bk)] - X[static_cast<size_t>(bk)] - XRdZ[static_cast<size_t>(bk)];
                if (corr)
                    T[static_cast<size_t>(bk)] -= (*corr)[static_cast<size_t>(bk)];
            }
            std::vector<double> ts(static_cast<size_t>(ns));
            for (int k = 0; k < ns; ++k)
            {
                double num = sigma_mu - s[static_cast<size_t>(k)] * z[static_cast<size_t>(k)];
                if (corr_s)
                    num -= (*corr_s)[static_cast<size_t>(k)];
                ts[static_cast<size_t>(k)] = num / z[static_cast<size_t>(k)];
            }
            Eigen::VectorXd rhs(m + nf);
            for (int i = 0; i < m; ++i)
            {
                double v = rp(i);
                for (int bk = 0; bk < nb; ++bk)
                    v -= inner_general(w.a[static_cast<size_t>(i)][static_cast<size_t>(bk)], T[static_cast<size_t>(bk)]);
                if (int k = w.slack_of[static_cast<size_t>(i)]; k >= 0)
                    v -= ts[static_cast<size_t>(k)] - s[static_cast<size_t>(k)] / z[static_cast<size_t>(k)] * rds[static_cast<size_t>(k)];
                rhs(i) = v;
            }
            for (int f = 0; f < nf; ++f)
                rhs(m + f) = ru[static_cast<size_t>(f)];
            const Eigen::VectorXd sol_vec = lu.solve(rhs);
            d.dy = sol_vec.head(m);
            d.du.assign(static_cast<size_t>(nf), 0.0);
            for (int f = 0; f < nf; ++f)
                d.du[static_cast<size_t>(f)] = sol_vec(m + f);
            d.dX.resize(static_cast<size_t>(nb));
            d.dZ.resize(static_cast<size_t>(nb));
            for (int bk = 0; bk < nb; ++bk)
            {
                cmat dz = Rd[static_cast<size_t>(bk)];
                cmat dx = T[static_cast<size_t>(bk)];
                for (int j = 0; j < m; ++j)
                {
                    dz -= d.dy(j) * w.a[static_cast<size_t>(j)][static_cast<size_t>(bk)];
                    dx += d.dy(j) * G[static_cast<size_t>(j)][static_cast<size_t>(bk)];
                }
                d.dZ[static_cast<size_t>(bk)] = herm(dz);
                d.dX[static_cast<size_t>(bk)] = herm(dx);
            }
            d.ds.assign(static_cast<size_t>(ns), 0.0);
            d.dz.assign(static_cast<size_t>(ns), 0.0);
            for (int i = 0; i < m; ++i)
                if (int k = w.slack_of[static_cast<size_t>(i)]; k >= 0)
                {
                    const double dzk = rds[static_cast<size_t>(k)] - d.dy(i);
                    d.dz[static_cast<size_t>(k)] = dzk;
                    d.ds[static_cast<size_t>(k)] = ts[static_cast<size_t>(k)] - s[static_cast<size_t>(k)] / z[static_cast<size_t>(k)] * dzk;
                }
            return d;
        };

        auto steps = [&](const Dir &d, double &ap, double &ad) {
            ap = max_step_vec(s, d.ds);
            ad = max_step_vec(z, d.dz);
            for (int bk = 0; bk < nb; ++bk)
            {
                ap = std::min(ap, max_step(X[static_cast<size_t>(bk)], d.dX[static_cast<size_t>(bk)]));
                ad = std::min(ad, max_step(Z[static_cast<size_t>(bk)], d.dZ[static_cast<size_t>(bk)]));
            }
        };

        // Predictor.
        const Dir aff = direction(0.0, nullptr, nullptr);
        double ap_aff, ad_aff;
        steps(aff, ap_aff, ad_aff);
        ap_aff = std::min(1.0, ap_aff);
        ad_aff = std::min(1.0, ad_aff);
        double comp_aff = 0.0;
        for (int bk = 0; bk < nb; ++bk)
            comp_aff += inner(X[static_cast<size_t>(bk)] + ap_aff * aff.dX[static_cast<size_t>(bk)],
                              Z[static_cast<size_t>(bk)] + ad_aff * aff.dZ[static_cast<size_t>(bk)]);
        for (int k = 0; k < ns; ++k)
            comp_aff += (s[static_cast<size_t>(k)] + ap_aff * aff.ds[static_cast<size_t>(k)]) *
                        (z[static_cast<size_t>(k)] + ad_aff * aff.dz[static_cast<size_t>(k)]);
        const double mu_aff = std::max(0.0, comp_aff / ntot);
        const double sigma = std::pow(std::min(1.0, mu_aff / mu), 3.0);

        // Corrector.
        std::vector<cmat> corr(static_cast<size_t>(nb));
        for (int bk = 0; bk < nb; ++bk)
            corr[static_cast<size_t>(bk)] = aff.dX[static_cast<size_t>(bk)] * aff.dZ[static_cast<size_t>(bk)] * Zinv[static_cast<size_t>(bk)];
        std::vector<double> corr_s(static_cast<size_t>(ns));
        for (int k = 0; k < ns; ++k)
            corr_s[static_cast<size_t>(k)] = aff.ds[static_cast<size_t>(k)] * aff.dz[static_cast<size_t>(k)];
        const Dir d = direction(sigma * mu, &corr, &corr_s);
        double ap, ad;
        steps(d, ap, ad);
        ap = std::min(1.0, step_factor * ap);
        ad = std::min(1.0, step_factor * ad);
        step_factor = std::min(0.995, 0.9 + 0.09 * std::min(ap, ad));

        for (int bk = 0; bk < nb; ++bk)
        {
            X[static_cast<size_t>(bk)] = herm(X[static_cast<size_t>(bk)] + ap * d.dX[static_cast<size_t>(bk)]);
            Z[static_cast<size_t>(bk)] = herm(Z[static_cast<size_t>(bk)] + ad * d.dZ[static_cast<size_t>(bk)]);
        }
        for (int k = 0; k < ns; ++k)
        {
            s[static_cast<size_t>(k)] += ap * d.ds[static_cast<size_t>(k)];
            z[static_cast<size_t>(k)] += ad * d.dz[static_cast<size_t>(k)];
        }
        for (int f = 0; f < nf; ++f)
            u[static_cast<size_t>(f)] += ap * d.du[static_cast<size_t>(f)];
        y += ad * d.dy;
    }

    sol.iterations = iter;
    sol.blocks = X;
    sol.free_values = u;
    sol.duals.resize(m);
    for (int i = 0; i < m; ++i)
        sol.duals(i) = y(i) * w.row_scale(i) / w.obj_scale;
    for (const auto &zb : Z)
        sol.dual_blocks.push_back(zb / w.obj_scale);
    sol.slacks.assign(static_cast<size_t>(m), 0.0);
    for (size_t i = 0; i < static_cast<size_t>(m); ++i)
        if (problem.constraints[i].sense == ConstraintSense::LessEqual)
            sol.slacks[i] = problem.constraints[i].rhs - problem.constraint_lhs(i, X, u);
    sol.primal_objective = problem.objective_value(X, u);
    double dobj = problem.objective_offset;
    for (int i = 0; i < m; ++i)
        dobj += sol.duals(i) * problem.constraints[static_cast<size_t>(i)].rhs;
    sol.dual_objective = dobj;
    sol.gap = std::abs(sol.primal_objective - sol.dual_objective) /
              (1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));
    sol.max_violation = problem.max_violation(X, u);
    sol.dual_infeasibility = sol.history.back().dual_infeasibility;
    return sol;
}

std::vector<int> block_ranks(const std::vector<cmat> &blocks, double tol)
{
    std::vector<rvec> eigs;
    double top = 0.0;
    for (const auto &b : blocks)
    {
        Eigen::SelfAdjointEigenSolver<cmat> es(herm(b), Eigen::EigenvaluesOnly);
        eigs.push_back(es.eigenvalues());
        top = std::max(top, es.eigenvalues().maxCoeff());
    }
    std::vector<int> ranks;
    for (const auto &e : eigs)
    {
        int r = 0;
        for (Eigen::Index i = 0; i < e.size(); ++i)
            if (e(i) > tol * top)
                ++r;
        ranks.push_back(r);
    }
    return ranks;
}
} // namespace wpt
