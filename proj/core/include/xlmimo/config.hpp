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

#ifndef XLMIMO_CONFIG_HPP
#define XLMIMO_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "xlmimo/errors.hpp"

namespace xlmimo {

/// How the N_c visibility regions of one user are placed along the array.
enum class VrPlacement
{
    disjoint,    ///< redraw the user's regions until no two share an antenna
    independent, ///< every region drawn on its own, overlaps allowed
};

/// System and channel parameters. Defaults are the reference scenario
/// (100-antenna, 60 m array; 4 users in a 5..30 m strip).
///
/// Noise powers are held in dBm exactly as configured; use the `_w()`
/// accessors for linear watts.
struct SystemConfig
{
    int M = 100;           // BS antennas
    int K = 4;             // single-antenna users
    double L = 60.0;       // array length [m]
    double d_min = 5.0;    // user strip depth bounds [m]
    double d_max = 30.0;
    int N_c = 3;           // visibility regions per user
    double gamma = 2.5;    // pathloss exponent
    double b0 = 2.95e-4;   // median channel gain at 1 m

    double B = 20e6;       // bandwidth [Hz]
    double B_C = 100e3;    // coherence bandwidth [Hz]
    double T_C = 2e-3;     // coherence time [s]

    double sigma2_ul_dbm = -100.0;
    double sigma2_dl_dbm = -80.0;

    double p_p = 0.1;          // pilot power per user [W]
    double p_ul = 0.1;         // UL data power per user [W]
    double P_dl_total = 1.0;   // total DL power, split equally [W]

    double eps_u = 0.4;
    double eps_d = 0.6;
    double eta_ul = 0.5;       // amplifier efficiency, user side
    double eta_dl = 0.4;       // amplifier efficiency, BS side

    double L_BS = 75e9;        // computational efficiency [flop/s per W]
    double P_FIX = 10.0;
    double P_LO = 0.2;
    double P_BS_ant = 0.2;     // per active BS antenna
    double P_UE = 0.2;         // per user
    double P_cod = 0.1e-9;     // [W per bit/s]
    double P_dec = 0.8e-9;
    double P_bt = 0.25e-9;

    VrPlacement vr_placement = VrPlacement::disjoint;

    int realizations = 1000;
    std::uint64_t seed = 1;

    double sigma2_ul_w() const noexcept;
    double sigma2_dl_w() const noexcept;

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;

    bool operator==(const SystemConfig &) const = default;
};

/// Coherence-block split. Sample counts stay real-valued.
struct FrameStructure
{
    double tau_c = 0.0;
    double tau_p = 0.0;
    double tau_u = 0.0;
    double tau_d = 0.0;

    bool operator==(const FrameStructure &) const = default;
};

/// Parses a `key = value` document (`#` starts a comment). Omitted keys keep
/// their defaults; `overrides` are applied after the document and may
/// replace keys it sets. The result is validated.
SystemConfig load_config(std::string_view text,
                         const std::vector<std::pair<std::string, std::string>> &overrides = {});

SystemConfig load_config_file(const std::string &path,
                              const std::vector<std::pair<std::string, std::string>> &overrides = {});

/// Writes every key, one per line, at round-trip precision.
std::string serialize_config(const SystemConfig &cfg);

/// Splits "key=value" into its parts; throws ConfigError when '=' is missing.
std::pair<std::string, std::string> parse_assignment(std::string_view text);

/// Keys accepted by load_config, in serialization order.
const std::vector<std::string> &config_keys();

FrameStructure derive_frame(const SystemConfig &cfg);

double dbm_to_watts(double dbm) noexcept;
double watts_to_dbm(double watts) noexcept;

} // namespace xlmimo

#endif
