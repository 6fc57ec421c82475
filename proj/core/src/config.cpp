// SPDX-License-Identifier: Apache-2.0
//
// xlmimo - link-level simulator for XL-MIMO antenna selection
// Copyright (C) 2026 The xlmimo authors
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

#include "xlmimo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <variant>

namespace xlmimo {

namespace {

using Field = std::variant<int SystemConfig::*, double SystemConfig::*,
                           std::uint64_t SystemConfig::*, VrPlacement SystemConfig::*>;

struct KeySpec
{
    const char *key;
    Field field;
};

// Serialization order.
const std::vector<KeySpec> &key_table()
{
    static const std::vector<KeySpec> table = {
        {"M", &SystemConfig::M},
        {"K", &SystemConfig::K},
        {"L", &SystemConfig::L},
        {"d_min", &SystemConfig::d_min},
        {"d_max", &SystemConfig::d_max},
        {"N_c", &SystemConfig::N_c},
        {"gamma", &SystemConfig::gamma},
        {"b0", &SystemConfig::b0},
        {"B", &SystemConfig::B},
        {"B_C", &SystemConfig::B_C},
        {"T_C", &SystemConfig::T_C},
        {"sigma2_ul_dbm", &SystemConfig::sigma2_ul_dbm},
        {"sigma2_dl_dbm", &SystemConfig::sigma2_dl_dbm},
        {"p_p", &SystemConfig::p_p},
        {"p_ul", &SystemConfig::p_ul},
        {"P_dl_total", &SystemConfig::P_dl_total},
        {"eps_u", &SystemConfig::eps_u},
        {"eps_d", &SystemConfig::eps_d},
        {"eta_ul", &SystemConfig::eta_ul},
        {"eta_dl", &SystemConfig::eta_dl},
        {"L_BS", &SystemConfig::L_BS},
        {"P_FIX", &SystemConfig::P_FIX},
        {"P_LO", &SystemConfig::P_LO},
        {"P_BS_ant", &SystemConfig::P_BS_ant},
        {"P_UE", &SystemConfig::P_UE},
        {"P_cod", &SystemConfig::P_cod},
        {"P_dec", &SystemConfig::P_dec},
        {"P_bt", &SystemConfig::P_bt},
        {"vr_placement", &SystemConfig::vr_placement},
        {"realizations", &SystemConfig::realizations},
        {"seed", &SystemConfig::seed},
    };
    return table;
}

const KeySpec *find_key(std::string_view key)
{
    for (const auto &spec : key_table())
        if (key == spec.key)
            return &spec;
    return nullptr;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\f\v");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\f\v");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string &key, std::string_view text)
{
    T value{};
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty())
        throw ConfigError(key, "not a valid " +
                                   std::string(std::is_integral_v<T> ? "integer" : "number") +
                                   ": '" + std::string(text) + "'");
    if constexpr (std::is_floating_point_v<T>)
        if (!std::isfinite(value))
            throw ConfigError(key, "value must be finite");
    return value;
}

void assign(SystemConfig &cfg, const KeySpec &spec, std::string_view text)
{
    const std::string key = spec.key;
    std::visit(
        [&](auto member) {
            using T = std::remove_reference_t<decltype(cfg.*member)>;
            if constexpr (std::is_same_v<T, VrPlacement>)
            {
                if (text == "disjoint")
                    cfg.*member = VrPlacement::disjoint;
                else if (text == "independent")
                    cfg.*member = VrPlacement::independent;
                else
                    throw ConfigError(key, "expected 'disjoint' or 'independent', got '" +
                                               std::string(text) + "'");
            }
            else
            {
                cfg.*member = parse_number<T>(key, text);
            }
        },
        spec.field);
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void require(bool ok, const char *key, const std::string &what)
{
    if (!ok)
        throw ConfigError(key, what);
}

} // namespace

double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) noexcept { return 10.0 * std::log10(watts) + 30.0; }

double SystemConfig::sigma2_ul_w() const noexcept { return dbm_to_watts(sigma2_ul_dbm); }

double SystemConfig::sigma2_dl_w() const noexcept { return dbm_to_watts(sigma2_dl_dbm); }

void SystemConfig::validate() const
{
    require(M >= 2, "M", "must be at least 2");
    require(K >= 1, "K", "must be at least 1");
    require(N_c >= 1, "N_c", "must be at least 1");
    require(L > 0.0, "L", "must be positive");
    require(d_min > 0.0, "d_min", "must be positive");
    require(d_max > d_min, "d_max", "must exceed d_min");
    require(gamma >= 2.0, "gamma", "pathloss exponent must be >= 2");
    require(b0 > 0.0, "b0", "must be positive");
    require(B > 0.0, "B", "must be positive");
    require(B_C > 0.0, "B_C", "must be positive");
    require(T_C > 0.0, "T_C", "must be positive");
    require(p_p > 0.0, "p_p", "must be positive");
    require(p_ul > 0.0, "p_ul", "must be positive");
    require(P_dl_total > 0.0, "P_dl_total", "must be positive");
    require(eps_u > 0.0 && eps_u < 1.0, "eps_u", "must lie in (0, 1)");
    require(eps_d > 0.0 && eps_d < 1.0, "eps_d", "must lie in (0, 1)");
    require(std::abs(eps_u + eps_d - 1.0) <= 1e-9, "eps_u", "eps_u+eps_d must equal 1");
    require(eta_ul > 0.0 && eta_ul <= 1.0, "eta_ul", "must lie in (0, 1]");
    require(eta_dl > 0.0 && eta_dl <= 1.0, "eta_dl", "must lie in (0, 1]");
    require(L_BS > 0.0, "L_BS", "must be positive");
    require(P_FIX > 0.0, "P_FIX", "must be positive");
    require(P_LO > 0.0, "P_LO", "must be positive");
    require(P_BS_ant > 0.0, "P_BS_ant", "must be positive");
    require(P_UE > 0.0, "P_UE", "must be positive");
    require(P_cod > 0.0, "P_cod", "must be positive");
    require(P_dec > 0.0, "P_dec", "must be positive");
    require(P_bt > 0.0, "P_bt", "must be positive");
    require(realizations >= 1, "realizations", "must be at least 1");
    if (vr_placement == VrPlacement::disjoint)
    {
        // Smallest region spans ceil(M/10) + 1 antennas.
        const int min_span = std::max(1, (M + 9) / 10) + 1;
        require(static_cast<long long>(N_c) * min_span <= M, "N_c",
                "too many disjoint visibility regions for M antennas");
    }
}

const std::vector<std::string> &config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto &spec : key_table())
            out.emplace_back(spec.key);
        return out;
    }();
    return keys;
}

std::pair<std::string, std::string> parse_assignment(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError(std::string(trim(text)), "expected 'key = value'");
    return {std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1)))};
}

SystemConfig load_config(std::string_view text,
                         const std::vector<std::pair<std::string, std::string>> &overrides)
{
    SystemConfig cfg;
    std::set<std::string> seen;

    std::size_t line_no = 0;
    while (!text.empty())
    {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(std::string(line), "line " + std::to_string(line_no) +
                                                     ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));

        const KeySpec *spec = find_key(key);
        if (spec == nullptr)
            throw ConfigError(key, "unknown key");
        if (!seen.insert(key).second)
            throw ConfigError(key, "duplicate key");
        assign(cfg, *spec, value);
    }

    for (const auto &[key, value] : overrides)
    {
        const KeySpec *spec = find_key(key);
        if (spec == nullptr)
            throw ConfigError(key, "unknown key");
        assign(cfg, *spec, trim(value));
    }

    cfg.validate();
    return cfg;
}

SystemConfig load_config_file(const std::string &path,
                              const std::vector<std::pair<std::string, std::string>> &overrides)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("", "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str(), overrides);
}

std::string serialize_config(const SystemConfig &cfg)
{
    std::string out;
    for (const auto &spec : key_table())
    {
        out += spec.key;
        out += " = ";
        std::visit(
            [&](auto member) {
                using T = std::remove_cvref_t<decltype(cfg.*member)>;
                if constexpr (std::is_same_v<T, VrPlacement>)
                    out += cfg.*member == VrPlacement::disjoint ? "disjoint" : "independent";
                else if constexpr (std::is_floating_point_v<T>)
                    out += format_double(cfg.*member);
                else
                    out += std::to_string(cfg.*member);
            },
            spec.field);
        out += '\n';
    }
    return out;
}

FrameStructure derive_frame(const SystemConfig &cfg)
{
    FrameStructure f;
    f.tau_c = cfg.T_C * cfg.B_C;
    f.tau_p = cfg.K;
    if (cfg.K < 1 || f.tau_p >= f.tau_c)
        throw InfeasibleError("infeasible frame: " + std::to_string(cfg.K) +
                              " pilot symbols leave no data symbols in a block of " +
                              format_double(f.tau_c) + " symbols");
    const double data = f.tau_c - f.tau_p;
    f.tau_u = cfg.eps_u * data;
    f.tau_d = cfg.eps_d * data;
    return f;
}

} // namespace xlmimo
