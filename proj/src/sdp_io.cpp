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

#include <istream>
#include <ostream>
#include <sstream>

namespace wpt
{
namespace
{
void write_block(std::ostream &os, const cmat &a)
{
    for (Eigen::Index i = 0; i < a.rows(); ++i)
    {
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            os << (j ? " " : "") << a(i, j).real() << ' ' << a(i, j).imag();
        os << '\n';
    }
}

cmat read_block(std::istream &is, int d)
{
    cmat a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
        {
            double re, im;
            if (!(is >> re >> im))
                throw std::invalid_argument("read_sdp_problem: truncated matrix");
            a(i, j) = cplx(re, im);
        }
    return a;
}

void expect(std::istream &is, const std::string &word)
{
    std::string w;
    if (!(is >> w) || w != word)
        throw std::invalid_argument("read_sdp_problem: expected '" + word + "', got '" + w + "'");
}
} // namespace

void write_sdp_problem(std::ostream &os, const SdpProblem &p)
{
    const auto prec = os.precision(17);
    os << "wpt-sdp 1\nblocks " << p.block_dims.size();
    for (int d : p.block_dims)
        os << ' ' << d;
    os << "\nfree " << p.num_free << "\noffset " << p.objective_offset << "\nfree_objective";
    for (int f = 0; f < p.num_free; ++f)
        os << ' ' << (p.free_objective.empty() ? 0.0 : p.free_objective[static_cast<size_t>(f)]);
    os << '\n';
    for (size_t b = 0; b < p.objective.size(); ++b)
        if (p.objective[b].size() != 0)
        {
            os << "objective " << b << '\n';
            write_block(os, p.objective[b]);
        }
    for (const auto &c : p.constraints)
    {
        os << "constraint " << (c.sense == ConstraintSense::Equal ? "EQ" : "LE") << ' ' << c.rhs << "\nfree_coeffs";
        for (int f = 0; f < p.num_free; ++f)
            os << ' ' << (c.free_coeffs.empty() ? 0.0 : c.free_coeffs[static_cast<size_t>(f)]);
        os << '\n';
        for (size_t b = 0; b < c.coeffs.size(); ++b)
            if (c.coeffs[b].size() != 0)
            {
                os << "coeff " << b << '\n';
                write_block(os, c.coeffs[b]);
            }
    }
    os << "end\n";
    os.precision(prec);
}

SdpProblem read_sdp_problem(std::istream &is)
{
    SdpProblem p;
    expect(is, "wpt-sdp");
    int version = 0;
    if (!(is >> version) || version != 1)
        throw std::invalid_argument("read_sdp_problem: unsupported version");
    expect(is, "blocks");
    size_t nb = 0;
    is >> nb;
    p.block_dims.resize(nb);
    for (auto &d : p.block_dims)
        is >> d;
    expect(is, "free");
    is >> p.num_free;
    expect(is, "offset");
    is >> p.objective_offset;
    expect(is, "free_objective");
    p.free_objective.resize(static_cast<size_t>(p.num_free));
    for (auto &v : p.free_objective)
        is >> v;
    if (!is)
        throw std::invalid_argument("read_sdp_problem: malformed header");

    std::string word;
    SdpConstraint *cur = nullptr;
    while (is >> word)
    {
        if (word == "end")
            return p;
        if (word == "objective")
        {
            size_t b;
            is >> b;
            if (b >= nb)
                throw std::invalid_argument("read_sdp_problem: block index out of range");
            if (p.objective.empty())
                p.objective.resize(nb);
            p.objective[b] = read_block(is, p.block_dims[b]);
        }
        else if (word == "constraint")
        {
            std::string sense;
            SdpConstraint c;
            is >> sense >> c.rhs;
            if (sense != "LE" && sense != "EQ")
                throw std::invalid_argument("read_sdp_problem: unknown sense " + sense);
            c.sense = sense == "EQ" ? ConstraintSense::Equal : ConstraintSense::LessEqual;
            expect(is, "free_coeffs");
            c.free_coeffs.resize(static_cast<size_t>(p.num_free));
            for (auto &v : c.free_coeffs)
                is >> v;
            c.coeffs.resize(nb);
            p.constraints.push_back(std::move(c));
            cur = &p.constraints.back();
        }
        else if (word == "coeff")
        {
            if (!cur)
                throw std::invalid_argument("read_sdp_problem: coefficient outside a constraint");
            size_t b;
            is >> b;
            if (b >= nb)
                throw std::invalid_argument("read_sdp_problem: block index out of range");
            cur->coeffs[b] = read_block(is, p.block_dims[b]);
        }
        else
            throw std::invalid_argument("read_sdp_problem: unexpected token " + word);
    }
    throw std::invalid_argument("read_sdp_problem: missing 'end'");
}
} // namespace wpt
