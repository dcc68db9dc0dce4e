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

#include "wpt/channel.hpp"
#include "wpt_embedded_pdp.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace wpt
{
PowerDelayProfile parse_pdp(std::string_view text, const std::string &name)
{
    PowerDelayProfile pdp;
    pdp.name = name;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line))
    {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.erase(pos);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        if (!header_seen)
        {
            header_seen = true;
            if (line.find("delay_ns") != std::string::npos)
                continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("parse_pdp: line " + std::to_string(line_no) + " is not 'delay_ns,power_db'");
        double delay_ns = 0.0, power_db = 0.0;
        try
        {
            size_t used = 0;
            delay_ns = std::stod(line.substr(0, comma), &used);
            power_db = std::stod(line.substr(comma + 1), &used);
        }
        catch (const std::exception &)
        {
            throw std::invalid_argument("parse_pdp: malformed number on line " + std::to_string(line_no));
        }
        if (!std::isfinite(delay_ns) || delay_ns < 0.0 || !std::isfinite(power_db))
            throw std::invalid_argument("parse_pdp: invalid tap on line " + std::to_string(line_no));
        if (!pdp.delays_s.empty() && delay_ns * 1e-9 <= pdp.delays_s.back())
            throw std::invalid_argument("parse_pdp: delays must be strictly increasing");
        pdp.delays_s.push_back(delay_ns * 1e-9);
        pdp.powers.push_back(std::pow(10.0, power_db / 10.0));
    }
    if (pdp.powers.empty())
        throw std::invalid_argument("parse_pdp: profile has no taps");
    double total = 0.0;
    for (double p : pdp.powers)
        total += p;
    for (double &p : pdp.powers)
        p /= total;
    pdp.tabulated_gain = total;
    return pdp;
}

PowerDelayProfile load_pdp_file(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw std::invalid_argument("load_pdp_file: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_pdp(ss.str(), path);
}

std::vector<std::string> builtin_pdp_ids()
{
    std::vector<std::string> ids{"flat"};
    for (const auto &[name, text] : embedded::wpt_embedded_pdp)
        ids.emplace_back(name);
    return ids;
}

PowerDelayProfile resolve_pdp(const std::string &id)
{
    if (id == "flat")
        return parse_pdp("0,0\n", "flat");
    if (id.rfind("file:", 0) == 0)
        return load_pdp_file(id.substr(5));
    for (const auto &[name, text] : embedded::wpt_embedded_pdp)
        if (name == id)
            return parse_pdp(text, id);
    throw std::invalid_argument("resolve_pdp: unknown profile id '" + id + "'");
}
} // namespace wpt
