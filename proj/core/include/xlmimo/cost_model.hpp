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

#ifndef XLMIMO_COST_MODEL_HPP
#define XLMIMO_COST_MODEL_HPP

#include <vector>

#include "xlmimo/config.hpp"
#include "xlmimo/selection.hpp"

namespace xlmimo {

/// Analytical flop ledger, all terms in flops per coherence block [fpcb].
struct ComplexityReport
{
    double c_ce = 0.0;    ///< LS channel estimation
    double c_comb = 0.0;  ///< UL combiner computation (MR or ZF)
    double c_prec = 0.0;  ///< DL precoder normalisation
    double c_rxtx = 0.0;  ///< per-symbol combining and precoding
    double c_theta = 0.0; ///< HRNP scores, zero without antenna selection
    double c_tsp = 0.0;   ///< c_comb + c_prec + c_rxtx + c_theta
    double flops_per_second = 0.0;
};

/// 3 M K tau_p.
double flops_channel_estimation(double M, double K, double tau_p);

/// Full ledger for one coherence block. Without antenna selection N is
/// replaced by M and the score term vanishes.
ComplexityReport flops_total(int M, int N, int K, const FrameStructure &frame, Scheme scheme,
                             bool as_enabled, double bandwidth);

struct TransmitPower
{
    double pilot = 0.0;
    double uplink = 0.0;
    double downlink = 0.0;
};

/// Amplifier power for pilots, UL data and DL data under equal power allocation.
TransmitPower power_transmit(const FrameStructure &frame, const SystemConfig &cfg);

struct PowerReport
{
    double p_tx_tr = 0.0;
    double p_tx_ul = 0.0;
    double p_tx_dl = 0.0;
    double p_fix = 0.0;
    double p_tc = 0.0;
    double p_ce = 0.0;
    double p_sp = 0.0;
    double p_cd = 0.0;
    double p_bh = 0.0;
    double p_cp = 0.0;
    double p_total = 0.0;
    double ee = 0.0; ///< bit/J
};

/// Circuit terms only (p_tx_* left at zero): fixed, transceiver chains,
/// estimation and processing compute, coding/decoding and backhaul.
PowerReport power_circuit(const ComplexityReport &complexity, double n_act, int K, double se,
                          const FrameStructure &frame, const SystemConfig &cfg);

/// B SE / p_total.
double energy_efficiency(double se, const PowerReport &power, double bandwidth);

/// Transmit plus circuit power and the resulting EE for one realization.
PowerReport power_report(const ComplexityReport &complexity, double n_act, double se,
                         const FrameStructure &frame, const SystemConfig &cfg);

/// One row of the reference complexity comparison, Gflop/s at full precision.
struct ComplexityTableRow
{
    int M = 0;
    int N = 0;
    int K = 0;
    double no_as_mr = 0.0;
    double as_mr = 0.0;
    double no_as_zf = 0.0;
    double as_zf = 0.0;
};

/// The four reference scenarios (M, N, K) = (32,4,2), (128,16,8),
/// (512,64,32), (2048,256,128) with B = 20 MHz, tau_c = 200, tau_p = K and
/// a 0.4/0.6 UL/DL split.
std::vector<ComplexityTableRow> complexity_table();

/// Round half away from zero for non-negative values (0.5 -> 1).
long long round_half_up(double x);

} // namespace xlmimo

#endif
