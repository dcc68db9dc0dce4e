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

#include "sca_common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wpt
{
const char *to_string(AlgStatus s)
{
    return s == AlgStatus::Converged ? "CONVERGED" : "MAX_ITER";
}

double PrecoderResult::min_vout() const
{
    return vout.empty() ? 0.0 : *std::min_element(vout.begin(), vout.end());
}

double PrecoderResult::weighted_vout(const std::vector<double> &weights) const
{
    if (weights.size() != vout.size())
        throw std::invalid_argument("weighted_vout: one weight per user required");
    double acc = 0.0;
    for (size_t q = 0; q < vout.size(); ++q)
        acc += weights[q] * vout[q];
    return acc;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

PowerBudget PowerBudget::total(double watts)
{
    if (!(watts > 0.0))
        throw std::invalid_argument("PowerBudget: power must be positive");
    return {Kind::TotalPower, watts};
}

PowerBudget PowerBudget::eirp_dbm(double dbm) { return {Kind::Eirp, dbm_to_watts(dbm)}; }

double PowerBudget::power(int num_antennas) const
{
    if (num_antennas < 1)
        throw std::invalid_argument("PowerBudget: M must be positive");
    return kind == Kind::TotalPower ? watts : watts / num_antennas;
}

std::vector<double> evaluate_vout(const cvec &s, const ChannelRealization &ch, const BetaCoefficients &b)
{
    std::vector<double> v;
    for (int q = 0; q < ch.num_users(); ++q)
        v.push_back(vout_quartic(s, ch.coupling(q), b));
    return v;
}
} // namespace wpt

namespace wpt::detail
{
AuxVars user_aux(const QuarticUser &u, const Iterate &it)
{
    if (it.rank_one)
        return aux_from_vector(it.x.segment(u.offset, u.dim()), u.coupling);
    return aux_from_gram(it.X.block(u.offset, u.offset, u.dim(), u.dim()), u.coupling);
}

double quartic_exact(const AuxVars &t, const BetaCoefficients &b)
{
    double tail = 0.0;
    for (Eigen::Index k = 1; k < t.size(); ++k)
        tail += std::norm(t(k));
    return -1.5 * b.beta4 * std::norm(t(0)) - 3.0 * b.beta4 * tail;
}

double quartic_linearized(const AuxVars &t, const AuxVars &tp, const BetaCoefficients &b)
{
    double cross = -1.5 * b.beta4 * (std::conj(tp(0)) * t(0)).real();
    for (Eigen::Index k = 1; k < t.size(); ++k)
        cross -= 3.0 * b.beta4 * (std::conj(tp(k)) * t(k)).real();
    return 2.0 * cross - quartic_exact(tp, b);
}

double user_vout(const QuarticUser &u, const AuxVars &t, const BetaCoefficients &b)
{
    return vout_from_aux(t, b, u.lin, u.quart);
}

double user_surrogate(const QuarticUser &u, const AuxVars &t, const AuxVars &tp, const BetaCoefficients &b)
{
    return -b.beta2 * u.lin * t(0).real() + u.quart * quartic_linearized(t, tp, b);
}

cmat user_linearized(const QuarticUser &u, const AuxVars &tp, const BetaCoefficients &b)
{
    std::vector<cplx> coeffs(static_cast<size_t>(u.coupling.tones()));
    coeffs[0] = -(b.beta2 * u.lin + 3.0 * b.beta4 * u.quart * tp(0).real()) / 2.0;
    for (size_t k = 1; k < coeffs.size(); ++k)
        coeffs[k] = -3.0 * b.beta4 * u.quart * std::conj(tp(static_cast<Eigen::Index>(k)));
    const cmat c = u.coupling.combination(coeffs);
    return c + c.adjoint();
}

double user_offset(const QuarticUser &u, const AuxVars &tp, const BetaCoefficients &b)
{
    return -u.quart * quartic_exact(tp, b);
}

double combine_objective(const ScaSetup &setup, const std::vector<double> &vout)
{
    if (setup.max_min)
        return *std::min_element(vout.begin(), vout.end());
    double acc = 0.0;
    for (size_t q = 0; q < vout.size(); ++q)
        acc += setup.weights[q] * vout[q];
    return acc;
}

namespace
{
double combine_surrogate(const ScaSetup &setup, const std::vector<double> &s)
{
    if (setup.max_min)
        return *std::max_element(s.begin(), s.end());
    double acc = 0.0;
    for (size_t q = 0; q < s.size(); ++q)
        acc += setup.weights[q] * s[q];
    return acc;
}

cvec canonical_stack(const ScaSetup &setup, const cvec &x)
{
    cvec out = x;
    for (const auto &u : setup.users)
    {
        cvec seg = out.segment(u.offset, u.dim());
        canonicalize_phase(seg);
        out.segment(u.offset, u.dim()) = seg;
    }
    return out;
}

double step_size(const ScaSetup &setup, const ScaConfig &cfg, const Iterate &cur, const Iterate &prev,
                 double obj, double obj_prev, double sur, double sur_prev)
{
    switch (cfg.stop)
    {
    case StopRule::Objective:
        return std::abs(obj - obj_prev) / std::max(std::abs(obj), 1e-300);
    case StopRule::Surrogate:
        return std::abs(sur - sur_prev) / std::max(std::abs(sur), 1e-300);
    case StopRule::Frobenius:
        break;
    }
    if (setup.vector_stop && cur.rank_one && prev.rank_one)
    {
        const cvec a = canonical_stack(setup, cur.x), c = canonical_stack(setup, prev.x);
        return (a - c).norm() / std::max(a.norm(), 1e-300);
    }
    if (cur.rank_one && prev.rank_one)
    {
        // ||x x^H - y y^H||_F^2 = ||x||^4 + ||y||^4 - 2 |x^H y|^2
        const double nx = cur.x.squaredNorm(), ny = prev.x.squaredNorm();
        const double d2 = std::max(0.0, nx * nx + ny * ny - 2.0 * std::norm(cur.x.dot(prev.x)));
        return std::sqrt(d2) / std::max(nx, 1e-300);
    }
    const cmat xc = cur.gram();
    return (xc - prev.gram()).norm() / std::max(xc.norm(), 1e-300);
}
} // namespace

ScaOutcome run_sca(const ScaSetup &setup, const Iterate &init, const BetaCoefficients &b, const ScaConfig &cfg,
                   const ApStep &step)
{
    if (!(cfg.epsilon > 0.0) || cfg.max_iter < 1)
        throw std::invalid_argument("ScaConfig: epsilon and max_iter must be positive");
    const size_t K = setup.users.size();

    auto evaluate = [&](const Iterate &it, std::vector<AuxVars> &t, std::vector<double> &v) {
        t.clear();
        v.clear();
        for (const auto &u : setup.users)
        {
            t.push_back(user_aux(u, it));
            v.push_back(user_vout(u, t.back(), b));
        }
    };

    ScaOutcome out;
    Iterate cur = init;
    std::vector<AuxVars> t;
    std::vector<double> v;
    evaluate(cur, t, v);

    TraceEntry e0;
    e0.iteration = 0;
    e0.vout = v;
    e0.aux = t;
    e0.objective = combine_objective(setup, v);
    std::vector<double> s0(K);
    for (size_t q = 0; q < K; ++q)
        s0[q] = user_surrogate(setup.users[q], t[q], t[q], b);
    e0.surrogate = combine_surrogate(setup, s0);
    e0.surrogate_at_previous = e0.surrogate;
    out.trace.entries.push_back(e0);

    Iterate best = cur;
    double best_obj = e0.objective;
    out.trace.status = AlgStatus::MaxIter;

    for (int l = 1; l <= cfg.max_iter; ++l)
    {
        TraceEntry e;
        e.iteration = l;
        Iterate cand = step(t, cur, e);

        std::vector<AuxVars> tc;
        std::vector<double> vc;
        evaluate(cand, tc, vc);
        std::vector<double> sc(K), sp(K);
        double exact = 0.0, lin = 0.0;
        for (size_t q = 0; q < K; ++q)
        {
            sc[q] = user_surrogate(setup.users[q], tc[q], t[q], b);
            sp[q] = user_surrogate(setup.users[q], t[q], t[q], b);
            const double w = setup.max_min ? 1.0 : setup.weights[q];
            exact += w * setup.users[q].quart * quartic_exact(tc[q], b);
            lin += w * setup.users[q].quart * quartic_linearized(tc[q], t[q], b);
        }
        double sur = combine_surrogate(setup, sc);
        const double sur_prev_point = combine_surrogate(setup, sp);
        const double prev_obj = combine_objective(setup, v);
        const double prev_sur = out.trace.entries.back().surrogate;

        if (sur > sur_prev_point)
        {
            // The previous iterate is feasible for this approximation and better.
            e.accepted = false;
            cand = cur;
            tc = t;
            vc = v;
            sur = sur_prev_point;
            exact = 0.0;
            for (size_t q = 0; q < K; ++q)
                exact += (setup.max_min ? 1.0 : setup.weights[q]) * setup.users[q].quart * quartic_exact(t[q], b);
            lin = exact;
        }
        e.surrogate = sur;
        e.surrogate_at_previous = sur_prev_point;
        e.vout = vc;
        e.aux = tc;
        e.objective = combine_objective(setup, vc);
        e.exact_quartic = exact;
        e.linearized_quartic = lin;
        e.step = e.accepted ? step_size(setup, cfg, cand, cur, e.objective, prev_obj, sur, prev_sur) : 0.0;
        out.trace.entries.push_back(e);

        cur = cand;
        t = tc;
        v = vc;
        out.trace.iterations = l;
        if (e.objective > best_obj)
        {
            best = cur;
            best_obj = e.objective;
        }
        if (e.step <= cfg.epsilon)
        {
            out.trace.status = AlgStatus::Converged;
            break;
        }
    }
    out.final = out.trace.status == AlgStatus::Converged ? cur : best;
    return out;
}

cvec mu_up_precoder(const ChannelRealization &ch, double power)
{
    const int M = ch.num_antennas, N = ch.num_tones;
    cvec w = cvec::Zero(static_cast<Eigen::Index>(M) * N);
    for (int q = 0; q < ch.num_users(); ++q)
    {
        const CouplingMatrices c = ch.coupling(q);
        for (int n = 0; n < N; ++n)
        {
            const cvec hn = c.tone_channel(n);
            const double nrm = hn.norm();
            if (nrm > 0.0)
                w.segment(static_cast<Eigen::Index>(n) * M, M) += hn.conjugate() / nrm;
        }
    }
    const double nw = w.norm();
    if (!(nw > 0.0))
        throw std::invalid_argument("mu_up_precoder: every channel is zero");
    return std::sqrt(power) * w / nw;
}

cvec ass_precoder(const ChannelRealization &ch, const std::vector<double> &weights, double power)
{
    // Linear-model optimum: best tone of sum_q w_q h* h^T, dominant beam.
    const int M = ch.num_antennas, N = ch.num_tones;
    int best_n = 0;
    double best_val = -1.0;
    cvec best_beam;
    for (int n = 0; n < N; ++n)
    {
        cmat r = cmat::Zero(M, M);
        for (int q = 0; q < ch.num_users(); ++q)
        {
            const cvec hn = ch.coupling(q).tone_channel(n);
            r += weights[static_cast<size_t>(q)] * hn.conjugate() * hn.transpose();
        }
        const auto d = dominant_eigvec(HermitianMatrix(r));
        if (d.eigenvalue > best_val * (1.0 + 1e-12))
        {
            best_val = d.eigenvalue;
            best_n = n;
            best_beam = d.vector;
        }
    }
    cvec s = cvec::Zero(static_cast<Eigen::Index>(M) * N);
    s.segment(static_cast<Eigen::Index>(best_n) * M, M) = std::sqrt(power) * best_beam;
    return s;
}

cvec initial_precoder(const ChannelRealization &ch, const std::vector<double> &weights, double power,
                      const ScaConfig &cfg)
{
    switch (cfg.init)
    {
    case InitPoint::UpMrt:
        return mu_up_precoder(ch, power);
    case InitPoint::Ass:
        return ass_precoder(ch, weights, power);
    case InitPoint::Custom:
    {
        if (cfg.custom_init.size() != static_cast<Eigen::Index>(ch.num_antennas) * ch.num_tones ||
            !(cfg.custom_init.norm() > 0.0))
            throw std::invalid_argument("initial_precoder: custom start must be a nonzero MN vector");
        return std::sqrt(power) * cfg.custom_init / cfg.custom_init.norm();
    }
    }
    return {};
}

std::vector<QuarticUser> che_users(const CheInputs &in)
{
    if (in.large_scale.empty() || in.num_tones < 1 || !(in.energy > 0.0))
        throw std::invalid_argument("CheInputs: need users, tones and positive energy");
    std::vector<QuarticUser> users;
    for (size_t q = 0; q < in.large_scale.size(); ++q)
    {
        const double l = in.large_scale[q];
        if (!(l > 0.0))
            throw std::invalid_argument("CheInputs: large-scale gains must be positive");
        const auto f = freq_coupling_asymptotic(in.num_tones, in.energy, l);
        users.push_back({f.coupling, static_cast<Eigen::Index>(q) * in.num_tones, f.lin_scale(), f.quart_scale()});
    }
    return users;
}

std::vector<double> MaxMinSdp::user_values(const std::vector<cmat> &xs) const
{
    std::vector<double> v;
    for (size_t q = 0; q < a.size(); ++q)
        v.push_back(trace_product(a[q], xs[static_cast<size_t>(block[q])]) + c[q]);
    return v;
}

int MaxMinSdp::reference_user(const std::vector<cmat> &xs) const
{
    const auto v = user_values(xs);
    double top = -std::numeric_limits<double>::infinity();
    for (double x : v)
        top = std::max(top, x);
    for (size_t q = 0; q < v.size(); ++q)
        if (v[q] >= top - 1e-9 * std::max(1.0, std::abs(top)))
            return static_cast<int>(q);
    return 0;
}

SdpProblem MaxMinSdp::reference_problem(int q0) const
{
    SdpProblem p;
    p.block_dims = relaxed.block_dims;
    const size_t nb = p.block_dims.size();
    const size_t r = static_cast<size_t>(q0);
    p.objective.assign(nb, cmat());
    p.objective[static_cast<size_t>(block[r])] = a[r];
    p.objective_offset = c[r];
    for (size_t q = 0; q < a.size(); ++q)
    {
        if (q == r)
            continue;
        SdpConstraint con;
        con.coeffs.assign(nb, cmat());
        con.coeffs[static_cast<size_t>(block[q])] = a[q];
        cmat &other = con.coeffs[static_cast<size_t>(block[r])];
        other = other.size() == 0 ? cmat(-a[r]) : cmat(other - a[r]);
        con.rhs = c[r] - c[q];
        p.constraints.push_back(std::move(con));
    }
    SdpConstraint budget = relaxed.constraints.back();
    budget.free_coeffs.clear();
    p.constraints.push_back(std::move(budget));
    return p;
}

MaxMinSdp build_max_min_sdp(const std::vector<QuarticUser> &users, const std::vector<AuxVars> &tp,
                            const BetaCoefficients &b, const std::vector<int> &block_dims,
                            const std::vector<int> &user_block, const std::vector<double> &kappa,
                            ConstraintSense budget_sense)
{
    MaxMinSdp s;
    s.block = user_block;
    s.kappa = kappa;
    s.budget_sense = budget_sense;
    std::vector<cmat> raw;
    std::vector<double> cbar;
    double sigma = 0.0;
    for (size_t q = 0; q < users.size(); ++q)
    {
        raw.push_back(user_linearized(users[q], tp[q], b) / kappa[static_cast<size_t>(user_block[q])]);
        cbar.push_back(user_offset(users[q], tp[q], b));
        sigma = std::max({sigma, raw.back().norm(), std::abs(cbar.back())});
    }
    s.sigma = sigma > 0.0 ? sigma : 1.0;
    for (size_t q = 0; q < users.size(); ++q)
    {
        s.a.push_back(raw[q] / s.sigma);
        s.c.push_back(cbar[q] / s.sigma);
    }

    const size_t nb = block_dims.size();
    SdpProblem &p = s.relaxed;
    p.block_dims = block_dims;
    p.num_free = 1;
    p.free_objective = {-1.0};
    for (size_t q = 0; q < users.size(); ++q)
    {
        SdpConstraint con;
        con.coeffs.assign(nb, cmat());
        con.coeffs[static_cast<size_t>(user_block[q])] = s.a[q];
        con.free_coeffs = {1.0};
        con.rhs = -s.c[q];
        p.constraints.push_back(std::move(con));
    }
    SdpConstraint budget;
    for (int d : block_dims)
        budget.coeffs.push_back(cmat::Identity(d, d));
    budget.free_coeffs = {0.0};
    budget.sense = budget_sense;
    budget.rhs = 1.0;
    p.constraints.push_back(std::move(budget));
    return s;
}

SdpOptions sdp_options(const ScaConfig &cfg)
{
    SdpOptions o;
    o.gap_tol = cfg.sdp_gap_tol;
    o.feas_tol = 1e-9;
    o.max_iter = 100;
    return o;
}
} // namespace wpt::detail
