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

#include "wpt/rectenna.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wpt
{
// Tapped delay line profile. Powers are normalized to unit sum; the sum of
// the powers as listed in the source table is kept in tabulated_gain.
struct PowerDelayProfile
{
    std::string name;
    std::vector<double> delays_s;
    std::vector<double> powers;
    double tabulated_gain = 1.0;
};

// Parses "delay_ns,power_db" lines. '#' starts a comment, blank lines are skipped.
PowerDelayProfile parse_pdp(std::string_view text, const std::string &name);
PowerDelayProfile load_pdp_file(const std::string &path);

// Built-in ids: "tgn_e_nlos" (bundled table) and "flat" (one tap).
// "file:<path>" loads a profile from disk.
PowerDelayProfile resolve_pdp(const std::string &id);
std::vector<std::string> builtin_pdp_ids();

// Unit: E|h|^2 equals the path gain. Tabulated: the path gain is multiplied
// by the summed tap powers of the source table.
enum class PdpScaling
{
    Unit,
    Tabulated,
};

struct PropagationConfig
{
    double carrier_hz = 2.4e9;
    double bandwidth_hz = 10e6;
    int num_tones = 1;
    int num_antennas = 1;
    int num_users = 1;
    std::vector<double> distance_m = {10.0}; // one entry, or one per user
    std::string pdp_id = "tgn_e_nlos";
    PdpScaling pdp_scaling = PdpScaling::Unit;
    double tx_gain_db = 0.0;
    double rx_gain_db = 0.0;
    double breakpoint_m = 20.0;
    double exponent_beyond = 3.5;
    std::uint64_t seed = 0;

    void validate() const;
    double distance(int user) const;
};

inline constexpr double speed_of_light = 3e8;

// Free-space loss up to the breakpoint, then exponent_beyond.
double path_loss_db(double distance_m, const PropagationConfig &cfg);

// f_n = f_c + (n - (N+1)/2) B / N, n = 1..N. Throws when w_1 <= (N-1) dw / 2.
std::vector<double> tone_grid(const PropagationConfig &cfg);

// Per-antenna average channel power of a user: path gain, antenna gains and
// the PDP scaling.
double large_scale_gain(const PropagationConfig &cfg, int user);

struct ChannelRealization
{
    int num_antennas = 0;
    int num_tones = 0;
    std::vector<cvec> h;              // one stacked MN vector per user
    std::vector<double> large_scale;  // Lambda_q

    int num_users() const { return static_cast<int>(h.size()); }
    CouplingMatrices coupling(int user) const;
    std::vector<CouplingMatrices> couplings() const;
};

ChannelRealization gen_realization(const PropagationConfig &cfg);

enum class HardenMode
{
    Exact,    // orthogonal h_{q,n} with ||h_{q,n}||^2 = M Lambda_q; needs M >= K N
    Gaussian, // i.i.d. CN(0, Lambda_q) entries
};

ChannelRealization gen_hardened(const std::vector<double> &large_scale, int num_antennas, int num_tones,
                                HardenMode mode, std::uint64_t seed = 0);

// Columns user,tone,antenna,re,im (0-based indices).
void write_channel_csv(std::ostream &os, const ChannelRealization &r);
} // namespace wpt
