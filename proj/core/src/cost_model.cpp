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

#include "xlmimo/cost_model.hpp"

#include <cmath>

namespace xlmimo {

double flops_channel_estimation(double M, double K, double tau_p) { return 3.0 * M * K * tau_p; }

ComplexityReport flops_total(int M, int N, int K, const FrameStructure &frame, Scheme scheme,
                             bool as_enabled, double bandwidth)
{
    const double m = M;
    const double k = K;
    const double n = as_enabled ? N : M;

    ComplexityReport r;
    r.c_ce = flops_channel_estimation(m, k, frame.tau_p);
    if (scheme == Scheme::mr)
        r.c_comb = 7.0 * k; // one complex division per user
    else
        r.c_comb = k * k * k * k + 1.5 * k * k * k * n + 4.5 * k * k * n + 6.0 * k * k;
    r.c_prec = 4.0 * k * n;
    r.c_rxtx = 3.0 * (frame.tau_u + frame.tau_d) * k * n;
    // 2K + 2 flops per (antenna, user) score.
    r.c_theta = as_enabled ? (2.0 * k + 2.0) * m * k : 0.0;
    r.c_tsp = r.c_comb + r.c_prec + r.c_rxtx + r.c_theta;
    r.flops_per_second = bandwidth * (r.c_ce + r.c_tsp) / frame.tau_c;
    return r;
}

TransmitPower power_transmit(const FrameStructure &frame, const SystemConfig &cfg)
{
    TransmitPower p;
    const double K = cfg.K;
    p.pilot = frame.tau_p / frame.tau_c / cfg.eta_ul * K * cfg.p_p;
    p.uplink = frame.tau_u / frame.tau_c / cfg.eta_ul * K * cfg.p_ul;
    p.downlink = frame.tau_d / frame.tau_c / cfg.eta_dl * cfg.P_dl_total;
    return p;
}

PowerReport power_circuit(const ComplexityReport &complexity, double n_act, int K, double se,
                          const FrameStructure &frame, const SystemConfig &cfg)
{
    PowerReport p;
    const double compute_scale = cfg.B / (frame.tau_c * cfg.L_BS);
    const double rate = cfg.B * se;
    p.p_fix = cfg.P_FIX;
    p.p_tc = cfg.P_LO + n_act * cfg.P_BS_ant + K * cfg.P_UE;
    p.p_ce = compute_scale * complexity.c_ce;
    p.p_sp = compute_scale * complexity.c_tsp;
    p.p_cd = rate * (cfg.P_cod + cfg.P_dec);
    p.p_bh = rate * cfg.P_bt;
    p.p_cp = p.p_fix + p.p_tc + p.p_ce + p.p_cd + p.p_bh + p.p_sp;
    p.p_total = p.p_cp;
    return p;
}

double energy_efficiency(double se, const PowerReport &power, double bandwidth)
{
    return bandwidth * se / power.p_total;
}

PowerReport power_report(const ComplexityReport &complexity, double n_act, double se,
                         const FrameStructure &frame, const SystemConfig &cfg)
{
    PowerReport p = power_circuit(complexity, n_act, cfg.K, se, frame, cfg);
    const TransmitPower tx = power_transmit(frame, cfg);
    p.p_tx_tr = tx.pilot;
    p.p_tx_ul = tx.uplink;
    p.p_tx_dl = tx.downlink;
    p.p_total = p.p_tx_ul + p.p_tx_dl + p.p_tx_tr + p.p_cp;
    p.ee = energy_efficiency(se, p, cfg.B);
    return p;
}

std::vector<ComplexityTableRow> complexity_table()
{
    struct Scenario
    {
        int M, N, K;
    };
    static constexpr Scenario scenarios[] = {{32, 4, 2}, {128, 16, 8}, {512, 64, 32}, {2048, 256, 128}};
    constexpr double bandwidth = 20e6;
    constexpr double tau_c = 200.0;
    constexpr double eps_u = 0.4;
    constexpr double eps_d = 0.6;

    std::vector<ComplexityTableRow> rows;
    for (const auto &s : scenarios)
    {
        FrameStructure f;
        f.tau_c = tau_c;
        f.tau_p = s.K;
        f.tau_u = eps_u * (tau_c - f.tau_p);
        f.tau_d = eps_d * (tau_c - f.tau_p);
        const auto gflops = [&](Scheme scheme, bool as) {
            return flops_total(s.M, s.N, s.K, f, scheme, as, bandwidth).flops_per_second / 1e9;
        };
        rows.push_back({s.M, s.N, s.K, gflops(Scheme::mr, false), gflops(Scheme::mr, true),
                        gflops(Scheme::zf, false), gflops(Scheme::zf, true)});
    }
    return rows;
}

long long round_half_up(double x) { return static_cast<long long>(std::floor(x + 0.5)); }

} // namespace xlmimo
