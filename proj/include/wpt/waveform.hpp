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

#include "wpt/channel.hpp"
#include "wpt/rectenna.hpp"
#include "wpt/sdp.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wpt
{
enum class StopRule
{
    Frobenius, // ||X(l) - X(l-1)||_F / ||X(l)||_F, or the stacked p for CHE designs
    Objective, // relative change of the true objective
    Surrogate, // relative change of the approximate-problem value
};

enum class InitPoint
{
    UpMrt,  // uniform power with matched filtering (MU-UP for several users)
    Ass,    // all power on the best tone
    Custom, // ScaConfig::custom_init
};

enum class AlgStatus
{
    Converged,
    MaxIter,
};

const char *to_string(AlgStatus s);

struct ScaConfig
{
    double epsilon = 1e-3;
    int max_iter = 200;
    StopRule stop = StopRule::Frobenius;
    InitPoint init = InitPoint::UpMrt;
    cvec custom_init;              // MN precoder, or stacked p for CHE designs
    int randomizations = 50;       // T of the randomized max-min design
    double sdp_gap_tol = 1e-10;
    std::uint64_t seed = 0;
};

// One SCA iteration. Iteration 0 describes the initial point.
struct TraceEntry
{
    int iteration = 0;
    double surrogate = 0.0;          // approximate-problem value at the accepted iterate
    double surrogate_at_previous = 0.0; // same problem evaluated at the previous iterate
    double objective = 0.0;          // weighted sum or minimum of the true voltages
    std::vector<double> vout;        // per user
    std::vector<AuxVars> aux;        // t_q per user
    double exact_quartic = 0.0;      // sum of g(t_q) weights, compared against the linearization
    double linearized_quartic = 0.0; // same with g~(t_q, t_q previous)
    double step = 0.0;               // stop statistic
    bool accepted = true;            // false when the previous iterate was kept
    bool degenerate = false;         // the eigenvector step hit a repeated eigenvalue
    int reference_user = -1;         // q0 of the max-min designs, chosen user of CHE WSum
    double rank_ratio = 0.0;         // lambda_2 / lambda_1 after rank reduction
    double rr_objective_change = 0.0;
    double rr_constraint_drift = 0.0;
    double trace_residual = 0.0;     // randomized CHE: worst relative trace mismatch
    std::string sdp_status;
};

struct OptimizationTrace
{
    std::vector<TraceEntry> entries;
    AlgStatus status = AlgStatus::MaxIter;
    int iterations = 0;
    int tie_break_user = -1; // CHE WSum: user picked by the RNG among tied users
    std::string notes;
};

struct PrecoderResult
{
    cvec s;                              // MN precoder, ||s||^2 = P (empty if no channel given)
    std::vector<double> vout;            // per user, truncated model on the actual channels
    std::vector<cvec> p;                 // frequency weights (SU: one vector; CHE: one per user)
    std::vector<double> vout_asymptotic; // CHE designs
    OptimizationTrace trace;

    double min_vout() const;
    double weighted_vout(const std::vector<double> &weights) const;
};

// Transmit power constraint: a total power, or an EIRP split over M antennas.
struct PowerBudget
{
    enum class Kind
    {
        TotalPower,
        Eirp,
    };
    Kind kind = Kind::TotalPower;
    double watts = 1.0;

    static PowerBudget total(double watts);
    static PowerBudget eirp_dbm(double dbm);
    double power(int num_antennas) const;
};

double dbm_to_watts(double dbm);

// Single-user design at frequency level with MRT per tone.
PrecoderResult su_wpt(const cvec &h, int num_antennas, int num_tones, double power, const BetaCoefficients &b,
                      const ScaConfig &cfg = {});

// Weighted-sum voltage maximization over the joint space-frequency precoder.
PrecoderResult wsum(const ChannelRealization &ch, const std::vector<double> &weights, double power,
                    const BetaCoefficients &b, const ScaConfig &cfg = {});

// Spatial beams fixed to the dominant eigenvector per tone, frequency weights optimized.
PrecoderResult wsum_s(const ChannelRealization &ch, const std::vector<double> &weights, double power,
                      const BetaCoefficients &b, const ScaConfig &cfg = {});

// Large-scale inputs of the channel-hardening designs. E = P M.
struct CheInputs
{
    std::vector<double> large_scale; // Lambda_q
    int num_tones = 1;
    double energy = 1.0;
};

// channels, when given, is used to assemble s and to evaluate the true voltages.
PrecoderResult che_wsum(const CheInputs &in, const std::vector<double> &weights, const BetaCoefficients &b,
                        const ScaConfig &cfg = {}, const ChannelRealization *channels = nullptr);

// Max-min designs with SDR and rank reduction (at most three users).
PrecoderResult max_min_rr(const ChannelRealization &ch, double power, const BetaCoefficients &b,
                          const ScaConfig &cfg = {});

// Max-min designs with SDR, relaxed SCA and Gaussian randomization.
PrecoderResult max_min_rand(const ChannelRealization &ch, double power, const BetaCoefficients &b,
                            const ScaConfig &cfg = {});

PrecoderResult che_max_min_rr(const CheInputs &in, const BetaCoefficients &b, const ScaConfig &cfg = {},
                              const ChannelRealization *channels = nullptr);

PrecoderResult che_max_min_randomized(const CheInputs &in, const BetaCoefficients &b, const ScaConfig &cfg = {},
                                      const ChannelRealization *channels = nullptr);

// s_n = sum_q p_{q,n} h*_{q,n} / sqrt(M), scaled to ||s||^2 = P.
cvec assemble_che_precoder(const std::vector<cvec> &p, const ChannelRealization &ch, double power);

// All power on the strongest tone of user q, MRT.
PrecoderResult baseline_ass(const ChannelRealization &ch, int user, double power, const BetaCoefficients &b);

// Equal power per tone, MRT for user q.
PrecoderResult baseline_up_mrt(const ChannelRealization &ch, int user, double power, const BetaCoefficients &b);

// w_n = sum_q h*_{q,n} / ||h_{q,n}||, s = sqrt(P) w / ||w||.
PrecoderResult baseline_mu_up(const ChannelRealization &ch, double power, const BetaCoefficients &b);

// w_q proportional to 1 / alpha_q, alpha_q = UP-MRT voltage of user q served alone.
std::vector<double> fairness_weights(const ChannelRealization &ch, double power, const BetaCoefficients &b);

// Time sharing: user q receives share_q times its single-user voltage.
std::vector<double> tdma_compose(const std::vector<double> &single_user_vout, const std::vector<double> &shares);

// True voltages of precoder s for every user of ch.
std::vector<double> evaluate_vout(const cvec &s, const ChannelRealization &ch, const BetaCoefficients &b);
} // namespace wpt
