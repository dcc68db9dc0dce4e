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

// Internal helpers shared by the SCA-based designs.

#include "wpt/waveform.hpp"

#include <functional>

namespace wpt::detail
{
// A user's quartic voltage as a function of a segment of the design variable.
struct QuarticUser
{
    CouplingMatrices coupling;
    Eigen::Index offset = 0; // first entry of the user's segment
    double lin = 1.0;        // scale of the beta2 term
    double quart = 1.0;      // scale of the beta4 terms

    Eigen::Index dim() const { return coupling.dim(); }
};

// Design variable: a vector x, or a Gram matrix X for relaxed iterates.
struct Iterate
{
    cvec x;
    cmat X;
    bool rank_one = true;

    cmat gram() const { return rank_one ? cmat(x * x.adjoint()) : X; }
    double trace() const { return rank_one ? x.squaredNorm() : X.trace().real(); }
};

AuxVars user_aux(const QuarticUser &u, const Iterate &it);

// t^H A0 t with A0 = diag(-3 beta4 / 2, -3 beta4, ...).
double quartic_exact(const AuxVars &t, const BetaCoefficients &b);

// 2 Re{tp^H A0 t} - tp^H A0 tp.
double quartic_linearized(const AuxVars &t, const AuxVars &tp, const BetaCoefficients &b);

double user_vout(const QuarticUser &u, const AuxVars &t, const BetaCoefficients &b);
double user_surrogate(const QuarticUser &u, const AuxVars &t, const AuxVars &tp, const BetaCoefficients &b);

// A_{q,1} = C + C^H on the user's segment, with Tr{A X} + offset = surrogate.
cmat user_linearized(const QuarticUser &u, const AuxVars &tp, const BetaCoefficients &b);
double user_offset(const QuarticUser &u, const AuxVars &tp, const BetaCoefficients &b);

struct ScaSetup
{
    std::vector<QuarticUser> users;
    std::vector<double> weights; // weighted-sum objective; unused for max-min
    bool max_min = false;
    Eigen::Index dim = 0;
    bool vector_stop = false;    // stop on the stacked vector distance (per-user canonical phase)
};

using ApStep = std::function<Iterate(const std::vector<AuxVars> &tp, const Iterate &prev, TraceEntry &entry)>;

struct ScaOutcome
{
    Iterate final;
    OptimizationTrace trace;
};

// Runs the successive approximation loop. A candidate whose approximate
// value exceeds that of the previous iterate is rejected and the loop stops.
ScaOutcome run_sca(const ScaSetup &setup, const Iterate &init, const BetaCoefficients &b, const ScaConfig &cfg,
                   const ApStep &step);

double combine_objective(const ScaSetup &setup, const std::vector<double> &vout);

// Initial precoders for the space-frequency designs.
cvec mu_up_precoder(const ChannelRealization &ch, double power);
cvec ass_precoder(const ChannelRealization &ch, const std::vector<double> &weights, double power);
cvec initial_precoder(const ChannelRealization &ch, const std::vector<double> &weights, double power,
                      const ScaConfig &cfg);

// Relaxed max-min approximate problem over scaled blocks Xs_b = kappa_b X_b:
//   min -g  s.t.  Tr{As_q Xs_b(q)} + g <= -cs_q,  sum_b Tr{Xs_b} (<= or =) 1,
// with As_q = A_q / (kappa sigma) and cs_q = cbar_q / sigma.
struct MaxMinSdp
{
    SdpProblem relaxed;
    std::vector<cmat> a;
    std::vector<double> c;
    std::vector<int> block;
    std::vector<double> kappa;
    double sigma = 1.0;
    ConstraintSense budget_sense = ConstraintSense::LessEqual;

    // Tr{As_q Xs} + cs_q per user.
    std::vector<double> user_values(const std::vector<cmat> &xs) const;
    // Largest user value, lowest index among ties.
    int reference_user(const std::vector<cmat> &xs) const;
    // The problem with user q0 singled out, used for rank reduction.
    SdpProblem reference_problem(int q0) const;
};

MaxMinSdp build_max_min_sdp(const std::vector<QuarticUser> &users, const std::vector<AuxVars> &tp,
                            const BetaCoefficients &b, const std::vector<int> &block_dims,
                            const std::vector<int> &user_block, const std::vector<double> &kappa,
                            ConstraintSense budget_sense);

SdpOptions sdp_options(const ScaConfig &cfg);

// Frequency-domain couplings (single antenna) for users with stacked p.
std::vector<QuarticUser> che_users(const CheInputs &in);
} // namespace wpt::detail
