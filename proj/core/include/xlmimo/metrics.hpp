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

#ifndef XLMIMO_METRICS_HPP
#define XLMIMO_METRICS_HPP

#include <span>
#include <vector>

#include "xlmimo/channel.hpp"
#include "xlmimo/config.hpp"
#include "xlmimo/selection.hpp"

namespace xlmimo {

/// UL SINR of user k from the true channel H and combiner V.
/// Throws ZeroCombinerError if V(:, k) is zero.
double sinr_ul(const CMatrix &H, const CMatrix &V, std::span<const double> p_ul, double sigma2,
               int k);

/// DL SINR of user k with inner products h_k^T w_i.
double sinr_dl(const CMatrix &H, const CMatrix &W, std::span<const double> p_dl, double sigma2,
               int k);

struct SpectralEfficiency
{
    double ul = 0.0;
    double dl = 0.0;

    double total() const noexcept { return ul + dl; }
};

/// Pre-log weighted sum rates of one realization [bit per channel use].
SpectralEfficiency ergodic_se(std::span<const double> sinr_ul, std::span<const double> sinr_dl,
                              const FrameStructure &frame);

/// User-averaged received powers of one realization in watts, before the
/// expectation over realizations: signal, interference and noise for UL and
/// DL.
struct ReceivedPower
{
    double s_ul = 0.0;
    double i_ul = 0.0;
    double n_ul = 0.0;
    double s_dl = 0.0;
    double i_dl = 0.0;
    double n_dl = 0.0;
};

ReceivedPower received_power(const CMatrix &H, const CMatrix &V, const CMatrix &W,
                             std::span<const double> p_ul, std::span<const double> p_dl,
                             double sigma2_ul, double sigma2_dl);

/// 10 log10(W) + 30 applied to each field.
ReceivedPower to_dbm(const ReceivedPower &watts);

struct RealizationMetrics
{
    std::vector<double> sinr_ul;
    std::vector<double> sinr_dl;
    double se_ul = 0.0;
    double se_dl = 0.0;
    double se_total = 0.0;
    ReceivedPower power; ///< watts
    bool skipped = false;
};

/// Equal power allocation: p_ul per user in UL, P_dl_total / K per user in DL.
std::vector<double> uplink_powers(const SystemConfig &cfg, int K);
std::vector<double> downlink_powers(const SystemConfig &cfg, int K);

/// SINRs, SE and received powers of one realization. Uses the per-user
/// supports in `sel` so the cost scales with N rather than M.
RealizationMetrics evaluate_link(const CMatrix &H, const SelectionResult &sel,
                                 const SystemConfig &cfg, const FrameStructure &frame);

} // namespace xlmimo

#endif
