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

#include "wpt/linalg.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace wpt
{
enum class ConstraintSense
{
    LessEqual,
    Equal,
};

// sum_b Tr{A_b X_b} + sum_f a_f u_f  (<= or =)  rhs
struct SdpConstraint
{
    std::vector<cmat> coeffs;        // one per block; a 0x0 matrix means zero
    std::vector<double> free_coeffs; // one per free variable, or empty
    ConstraintSense sense = ConstraintSense::LessEqual;
    double rhs = 0.0;
};

// minimize sum_b Tr{C_b X_b} + c^T u + offset over Hermitian X_b >= 0 and free u.
struct SdpProblem
{
    std::vector<int> block_dims;
    std::vector<cmat> objective;       // one per block; 0x0 means zero
    int num_free = 0;
    std::vector<double> free_objective; // one per free variable, or empty
    std::vector<SdpConstraint> constraints;
    double objective_offset = 0.0;

    // Checks shapes, Hermitian data, finiteness, and that every block has its
    // trace bounded by some constraint.
    void validate() const;

    double objective_value(const std::vector<cmat> &blocks, const std::vector<double> &free) const;
    double constraint_lhs(size_t i, const std::vector<cmat> &blocks, const std::vector<double> &free) const;

    // max_i violation_i / (1 + |rhs_i|); LE constraints only count excess.
    double max_violation(const std::vector<cmat> &blocks, const std::vector<double> &free) const;
};

enum class SdpStatus
{
    Optimal,
    MaxIter,
    Infeasible,
};

const char *to_string(SdpStatus s);

struct SdpIterate
{
    double primal_objective;
    double dual_objective;
    double complementarity; // <X, Z> + s^T z, nonnegative at every iterate
    double primal_infeasibility;
    double dual_infeasibility;
};

struct SdpSolution
{
    std::vector<cmat> blocks;
    std::vector<double> free_values;
    std::vector<double> slacks; // rhs - lhs per constraint (0 for equalities)
    rvec duals;                 // y, one per constraint
    std::vector<cmat> dual_blocks;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double gap = 0.0; // |p - d| / (1 + |p| + |d|)
    double max_violation = 0.0;
    double dual_infeasibility = 0.0;
    SdpStatus status = SdpStatus::MaxIter;
    int iterations = 0;
    std::vector<SdpIterate> history; // starting point plus one entry per step
};

struct SdpOptions
{
    double gap_tol = 1e-7;
    double feas_tol = 1e-8;
    int max_iter = 100;
};

// Primal-dual path following with the HKM direction and Mehrotra correction.
// Inequalities get nonnegative slack variables; free variables enter the
// Newton system through an augmented block.
SdpSolution solve_sdp(const SdpProblem &problem, const SdpOptions &options = {});

// Number of eigenvalues above tol * (largest eigenvalue over all blocks).
std::vector<int> block_ranks(const std::vector<cmat> &blocks, double tol = 1e-9);

struct RankReductionInfo
{
    int steps = 0;
    double objective_change = 0.0;  // relative to max(1e-300, |objective|)
    double max_constraint_drift = 0.0;
};

// Lowers sum_b rank(X_b)^2 to at most the number of constraints while keeping
// every constraint value fixed. The objective is held fixed as long as the
// remaining rank budget allows; the last step moves to the rank-deficient end
// point with the smaller objective.
SdpSolution rank_reduce(const SdpSolution &solution, const SdpProblem &problem, RankReductionInfo *info = nullptr);

// Unit-modulus v with v_1 = 1 and v^H Q v = Tr{Q}. Phases whose accumulated
// cross term vanishes are drawn from rng.
cvec rank1_preserving_vector(const cmat &q, Rng &rng);

// T candidates U S^{1/2} v_t from X = U S U^H, with v_t unit-modulus random.
// Every candidate satisfies ||x||^2 = Tr{X}.
std::vector<cvec> randomize_gaussian_rank1(const cmat &x, int count, Rng &rng);

// Plain-text dump of a problem, readable by read_sdp_problem.
void write_sdp_problem(std::ostream &os, const SdpProblem &problem);
SdpProblem read_sdp_problem(std::istream &is);
} // namespace wpt
