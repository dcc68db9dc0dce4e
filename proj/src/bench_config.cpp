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

#include "wpt/bench.hpp"

#include "wpt_embedded_presets.hpp"

#define TOML_ENABLE_FORMATTERS 0
#include <toml.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wpt::bench
{
namespace
{
struct AlgName
{
    Algorithm a;
    const char *id;
};

constexpr AlgName alg_names[] = {
    {Algorithm::SuWpt, "su_wpt"},
    {Algorithm::Wsum, "wsum"},
    {Algorithm::WsumS, "wsum_s"},
    {Algorithm::FaWsum, "fa_wsum"},
    {Algorithm::CheWsum, "che_wsum"},
    {Algorithm::MaxMinRr, "max_min_rr"},
    {Algorithm::MaxMinRand, "max_min_rand"},
    {Algorithm::CheMaxMinRr, "che_max_min_rr"},
    {Algorithm::CheMaxMinRand, "che_max_min_rand"},
    {Algorithm::Ass, "ass"},
    {Algorithm::UpMrt, "up"},
    {Algorithm::MuUp, "mu_up"},
};

// Collects problems while reading a TOML document.
class Reader
{
  public:
    std::vector<std::string> problems;

    void check_keys(const toml::table &t, const std::string &where, std::initializer_list<std::string_view> allowed)
    {
        for (const auto &[k, v] : t)
        {
            (void)v;
            if (std::find(allowed.begin(), allowed.end(), k.str()) == allowed.end())
                problems.push_back(where + ": unknown key '" + std::string(k.str()) + "'");
        }
    }

    template <class T> void get(const toml::table &t, std::string_view key, const std::string &where, T &out)
    {
        const toml::node *n = t.get(key);
        if (!n)
            return;
        if constexpr (std::is_same_v<T, std::string>)
        {
            if (auto v = n->value<std::string>())
                out = *v;
            else
                bad(where, key, "a string");
        }
        else if constexpr (std::is_same_v<T, bool>)
        {
            if (auto v = n->value<bool>())
                out = *v;
            else
                bad(where, key, "a boolean");
        }
        else if constexpr (std::is_integral_v<T>)
        {
            if (auto v = n->value<std::int64_t>())
            {
                if constexpr (std::is_unsigned_v<T>)
                {
                    if (*v < 0)
                        return bad(where, key, "a nonnegative integer");
                }
                out = static_cast<T>(*v);
            }
            else
                bad(where, key, "an integer");
        }
        else
        {
            if (auto v = n->value<double>())
                out = *v;
            else
                bad(where, key, "a number");
        }
    }

    template <class T> std::vector<T> list(const toml::table &t, std::string_view key, const std::string &where)
    {
        std::vector<T> out;
        const toml::node *n = t.get(key);
        if (!n)
            return out;
        const toml::array *arr = n->as_array();
        if (!arr)
        {
            // A scalar is a one-element list.
            if constexpr (std::is_integral_v<T>)
            {
                if (auto v = n->value<std::int64_t>())
                    return {static_cast<T>(*v)};
            }
            else if (auto v = n->value<double>())
                return {*v};
            bad(where, key, "a number or a list of numbers");
            return out;
        }
        for (const auto &e : *arr)
        {
            if constexpr (std::is_integral_v<T>)
            {
                if (auto v = e.value<std::int64_t>())
                    out.push_back(static_cast<T>(*v));
                else
                    bad(where, key, "a list of integers");
            }
            else
            {
                if (auto v = e.value<double>())
                    out.push_back(*v);
                else
                    bad(where, key, "a list of numbers");
            }
        }
        return out;
    }

  private:
    void bad(const std::string &where, std::string_view key, const char *what)
    {
        problems.push_back(where + ": '" + std::string(key) + "' must be " + what);
    }
};

std::optional<StopRule> parse_stop(const std::string &s)
{
    if (s == "frobenius")
        return StopRule::Frobenius;
    if (s == "objective")
        return StopRule::Objective;
    if (s == "surrogate")
        return StopRule::Surrogate;
    return std::nullopt;
}

std::optional<InitPoint> parse_init(const std::string &s)
{
    if (s == "up_mrt")
        return InitPoint::UpMrt;
    if (s == "ass")
        return InitPoint::Ass;
    return std::nullopt;
}
} // namespace

const char *to_string(Algorithm a)
{
    for (const auto &n : alg_names)
        if (n.a == a)
            return n.id;
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view id)
{
    for (const auto &n : alg_names)
        if (id == n.id)
            return n.a;
    return std::nullopt;
}

std::vector<std::string> algorithm_ids()
{
    std::vector<std::string> v;
    for (const auto &n : alg_names)
        v.emplace_back(n.id);
    return v;
}

bool single_user(Algorithm a) { return a == Algorithm::SuWpt || a == Algorithm::Ass || a == Algorithm::UpMrt; }

ConfigError::ConfigError(std::vector<std::string> p)
    : std::runtime_error([&] {
          std::string msg = "invalid configuration:";
          for (const auto &s : p)
              msg += "\n  " + s;
          return msg;
      }()),
      problems(std::move(p))
{
}

std::vector<std::string> ScenarioConfig::validate() const
{
    std::vector<std::string> p;
    if (trials < 1)
        p.push_back("trials must be at least 1");
    if (antennas.empty())
        p.push_back("sweep.antennas is empty");
    if (tones.empty())
        p.push_back("sweep.tones is empty");
    if (users.empty())
        p.push_back("sweep.users is empty");
    if (distances_m.empty())
        p.push_back("sweep.distance_m is empty");
    if (budgets.empty())
        p.push_back("sweep needs power_w or eirp_dbm");
    if (algorithms.empty())
        p.push_back("no algorithm listed");
    for (int m : antennas)
        if (m < 1)
            p.push_back("sweep.antennas entries must be at least 1");
    for (int n : tones)
        if (n < 1)
            p.push_back("sweep.tones entries must be at least 1");
    for (int k : users)
        if (k < 1)
            p.push_back("sweep.users entries must be at least 1");
    for (double d : distances_m)
        if (!(d > 0.0))
            p.push_back("sweep.distance_m entries must be positive");
    for (const auto &b : budgets)
        if (!(b.watts > 0.0) || !std::isfinite(b.watts))
            p.push_back("budgets must be positive");
    if (region_points < 2)
        p.push_back("region_points must be at least 2");

    const int max_k = users.empty() ? 1 : *std::max_element(users.begin(), users.end());
    std::set<std::string> labels;
    for (const auto &a : algorithms)
    {
        const std::string name = a.label.empty() ? to_string(a.algorithm) : a.label;
        if (!labels.insert(name).second)
            p.push_back("duplicate algorithm label '" + name + "'");
        if (a.algorithm == Algorithm::MaxMinRr && max_k > 3)
            p.push_back(name + ": max_min_rr supports at most 3 users");
        if (single_user(a.algorithm) && max_k > 1 && mode == RunMode::MonteCarlo)
            p.push_back(name + ": single-user algorithm with more than one user");
        if (!a.weights.empty())
            for (int k : users)
                if (static_cast<int>(a.weights.size()) != k)
                    p.push_back(name + ": weights need one entry per user");
        for (double w : a.weights)
            if (!(w >= 0.0))
                p.push_back(name + ": weights must be nonnegative");
        if (!(a.sca.epsilon > 0.0))
            p.push_back(name + ": epsilon must be positive");
        if (a.sca.max_iter < 1)
            p.push_back(name + ": max_iter must be at least 1");
        if (a.sca.randomizations < 1)
            p.push_back(name + ": randomizations must be at least 1");
        if (mode == RunMode::Region && a.algorithm != Algorithm::Wsum && a.algorithm != Algorithm::WsumS &&
            a.algorithm != Algorithm::CheWsum)
            p.push_back(name + ": region mode supports wsum, wsum_s and che_wsum only");
    }
    if (mode == RunMode::Region && (users.size() != 1 || users.front() != 2))
        p.push_back("region mode needs exactly two users");

    try
    {
        resolve_pdp(propagation.pdp_id);
    }
    catch (const std::exception &e)
    {
        p.push_back(std::string("propagation.pdp: ") + e.what());
    }
    for (int n : tones)
    {
        if (n < 1)
            continue;
        PropagationConfig pc = propagation;
        pc.num_tones = n;
        try
        {
            tone_grid(pc);
        }
        catch (const std::exception &e)
        {
            p.push_back("propagation with N=" + std::to_string(n) + ": " + e.what());
        }
    }
    if (!(propagation.carrier_hz > 0.0) || !(propagation.bandwidth_hz > 0.0))
        p.push_back("propagation: carrier and bandwidth must be positive");
    if (channel == ChannelKind::HardenedExact)
        for (int m : antennas)
            for (int n : tones)
                for (int k : users)
                    if (m < k * n)
                        p.push_back("hardened_exact channels need M >= K N (M=" + std::to_string(m) + ", N=" +
                                    std::to_string(n) + ", K=" + std::to_string(k) + ")");
    try
    {
        rectifier.validate();
    }
    catch (const std::exception &e)
    {
        p.push_back(std::string("rectifier: ") + e.what());
    }
    for (const auto &r : references)
        if (!labels.count(r.algorithm))
            p.push_back("reference names unknown algorithm '" + r.algorithm + "'");
    return p;
}

ScenarioConfig parse_config(std::string_view text, const std::string &source)
{
    toml::table doc;
    try
    {
        doc = toml::parse(text, source);
    }
    catch (const toml::parse_error &e)
    {
        std::ostringstream os;
        os << source << ':' << e.source().begin.line << ':' << e.source().begin.column << ": " << e.description();
        throw ConfigError({os.str()});
    }

    Reader rd;
    ScenarioConfig cfg;
    rd.check_keys(doc, "top level",
                  {"name", "description", "trials", "seed", "output", "mode", "channel", "region_points", "sweep",
                   "propagation", "rectifier", "algorithm", "reference"});
    rd.get(doc, "name", "top level", cfg.name);
    rd.get(doc, "description", "top level", cfg.description);
    rd.get(doc, "trials", "top level", cfg.trials);
    rd.get(doc, "seed", "top level", cfg.seed);
    rd.get(doc, "output", "top level", cfg.output);
    rd.get(doc, "region_points", "top level", cfg.region_points);
    std::string mode = "monte_carlo", channel = "tdl";
    rd.get(doc, "mode", "top level", mode);
    rd.get(doc, "channel", "top level", channel);
    if (mode == "monte_carlo")
        cfg.mode = RunMode::MonteCarlo;
    else if (mode == "region")
        cfg.mode = RunMode::Region;
    else
        rd.problems.push_back("mode must be monte_carlo or region");
    if (channel == "tdl")
        cfg.channel = ChannelKind::Tdl;
    else if (channel == "hardened_gaussian")
        cfg.channel = ChannelKind::HardenedGaussian;
    else if (channel == "hardened_exact")
        cfg.channel = ChannelKind::HardenedExact;
    else
        rd.problems.push_back("channel must be tdl, hardened_gaussian or hardened_exact");

    if (const toml::table *s = doc["sweep"].as_table())
    {
        rd.check_keys(*s, "sweep", {"antennas", "tones", "users", "distance_m", "power_w", "eirp_dbm"});
        cfg.antennas = rd.list<int>(*s, "antennas", "sweep");
        cfg.tones = rd.list<int>(*s, "tones", "sweep");
        cfg.users = rd.list<int>(*s, "users", "sweep");
        if (s->contains("distance_m"))
            cfg.distances_m = rd.list<double>(*s, "distance_m", "sweep");
        else
            cfg.distances_m = {10.0};
        if (cfg.users.empty() && !s->contains("users"))
            cfg.users = {1};
        for (double w : rd.list<double>(*s, "power_w", "sweep"))
            cfg.budgets.push_back(PowerBudget::total(w));
        for (double d : rd.list<double>(*s, "eirp_dbm", "sweep"))
            cfg.budgets.push_back(PowerBudget::eirp_dbm(d));
        if (s->contains("power_w") && s->contains("eirp_dbm"))
            rd.problems.push_back("sweep: give power_w or eirp_dbm, not both");
    }
    else
        rd.problems.push_back("missing [sweep] table");

    if (const toml::table *p = doc["propagation"].as_table())
    {
        rd.check_keys(*p, "propagation",
                      {"carrier_hz", "bandwidth_hz", "pdp", "pdp_scaling", "tx_gain_db", "rx_gain_db", "breakpoint_m",
                       "exponent_beyond"});
        auto &pc = cfg.propagation;
        rd.get(*p, "carrier_hz", "propagation", pc.carrier_hz);
        rd.get(*p, "bandwidth_hz", "propagation", pc.bandwidth_hz);
        rd.get(*p, "pdp", "propagation", pc.pdp_id);
        rd.get(*p, "tx_gain_db", "propagation", pc.tx_gain_db);
        rd.get(*p, "rx_gain_db", "propagation", pc.rx_gain_db);
        rd.get(*p, "breakpoint_m", "propagation", pc.breakpoint_m);
        rd.get(*p, "exponent_beyond", "propagation", pc.exponent_beyond);
        std::string scaling = "unit";
        rd.get(*p, "pdp_scaling", "propagation", scaling);
        if (scaling == "unit")
            pc.pdp_scaling = PdpScaling::Unit;
        else if (scaling == "tabulated")
            pc.pdp_scaling = PdpScaling::Tabulated;
        else
            rd.problems.push_back("propagation: pdp_scaling must be unit or tabulated");
    }

    if (const toml::table *r = doc["rectifier"].as_table())
    {
        rd.check_keys(*r, "rectifier", {"r_ant", "n_i", "v_t", "i_s"});
        rd.get(*r, "r_ant", "rectifier", cfg.rectifier.r_ant);
        rd.get(*r, "n_i", "rectifier", cfg.rectifier.n_i);
        rd.get(*r, "v_t", "rectifier", cfg.rectifier.v_t);
        rd.get(*r, "i_s", "rectifier", cfg.rectifier.i_s);
    }

    if (const toml::node *an = doc.get("algorithm"))
    {
        const toml::array *arr = an->as_array();
        if (!arr)
            rd.problems.push_back("algorithm must be an array of tables ([[algorithm]])");
        else
        {
            int i = 0;
            for (const auto &e : *arr)
            {
                const std::string where = "algorithm #" + std::to_string(++i);
                const toml::table *t = e.as_table();
                if (!t)
                {
                    rd.problems.push_back(where + ": expected a table");
                    continue;
                }
                rd.check_keys(*t, where,
                              {"id", "label", "epsilon", "max_iter", "stop", "init", "randomizations", "weights",
                               "sdp_gap_tol"});
                AlgorithmSpec spec;
                std::string id;
                rd.get(*t, "id", where, id);
                if (auto a = parse_algorithm(id))
                    spec.algorithm = *a;
                else
                {
                    rd.problems.push_back(where + ": unknown algorithm id '" + id + "'");
                    continue;
                }
                rd.get(*t, "label", where, spec.label);
                if (spec.label.empty())
                    spec.label = id;
                rd.get(*t, "epsilon", where, spec.sca.epsilon);
                rd.get(*t, "max_iter", where, spec.sca.max_iter);
                rd.get(*t, "randomizations", where, spec.sca.randomizations);
                rd.get(*t, "sdp_gap_tol", where, spec.sca.sdp_gap_tol);
                std::string stop, init;
                rd.get(*t, "stop", where, stop);
                rd.get(*t, "init", where, init);
                if (!stop.empty())
                {
                    if (auto s = parse_stop(stop))
                        spec.sca.stop = *s;
                    else
                        rd.problems.push_back(where + ": stop must be frobenius, objective or surrogate");
                }
                if (!init.empty())
                {
                    if (auto s = parse_init(init))
                        spec.sca.init = *s;
                    else
                        rd.problems.push_back(where + ": init must be up_mrt or ass");
                }
                spec.weights = rd.list<double>(*t, "weights", where);
                cfg.algorithms.push_back(std::move(spec));
            }
        }
    }

    if (const toml::node *rn = doc.get("reference"))
    {
        const toml::array *arr = rn->as_array();
        if (!arr)
            rd.problems.push_back("reference must be an array of tables ([[reference]])");
        else
        {
            int i = 0;
            for (const auto &e : *arr)
            {
                const std::string where = "reference #" + std::to_string(++i);
                const toml::table *t = e.as_table();
                if (!t)
                {
                    rd.problems.push_back(where + ": expected a table");
                    continue;
                }
                rd.check_keys(*t, where, {"algorithm", "metric", "value", "note", "M", "N", "K", "distance_m",
                                          "budget_value"});
                Reference r;
                rd.get(*t, "algorithm", where, r.algorithm);
                rd.get(*t, "metric", where, r.metric);
                rd.get(*t, "value", where, r.value);
                rd.get(*t, "note", where, r.note);
                for (const char *k : {"M", "N", "K", "distance_m", "budget_value"})
                    if (t->contains(k))
                    {
                        double v = 0.0;
                        rd.get(*t, k, where, v);
                        r.at[k] = v;
                    }
                if (r.metric.empty())
                    r.metric = "mean_vout_min";
                if (!GroupSummary{}.metric(r.metric))
                    rd.problems.push_back(where + ": unknown metric '" + r.metric + "'");
                cfg.references.push_back(std::move(r));
            }
        }
    }

    auto more = cfg.validate();
    // Table-reading problems come first; validation repeats some of them otherwise.
    if (!rd.problems.empty())
    {
        rd.problems.insert(rd.problems.end(), more.begin(), more.end());
        throw ConfigError(std::move(rd.problems));
    }
    if (!more.empty())
        throw ConfigError(std::move(more));
    return cfg;
}

ScenarioConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot open config file '" + path + "'"});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::vector<std::string> preset_ids()
{
    std::vector<std::string> ids;
    for (const auto &[name, text] : embedded::wpt_embedded_presets)
    {
        (void)text;
        ids.emplace_back(name);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::string preset_text(const std::string &id)
{
    for (const auto &[name, text] : embedded::wpt_embedded_presets)
        if (name == id)
            return std::string(text);
    throw std::invalid_argument("unknown preset '" + id + "'");
}

ScenarioConfig load_preset(const std::string &id) { return parse_config(preset_text(id), "preset:" + id); }

std::vector<SweepPoint> expand_sweep(const ScenarioConfig &cfg)
{
    std::vector<SweepPoint> pts;
    for (int k : cfg.users)
        for (int m : cfg.antennas)
            for (int n : cfg.tones)
                for (double d : cfg.distances_m)
                    for (const auto &b : cfg.budgets)
                    {
                        SweepPoint p;
                        p.index = static_cast<int>(pts.size());
                        p.users = k;
                        p.antennas = m;
                        p.tones = n;
                        p.distance_m = d;
                        p.budget = b;
                        pts.push_back(p);
                    }
    return pts;
}
} // namespace wpt::bench
