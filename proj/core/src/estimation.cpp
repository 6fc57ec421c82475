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

#include "xlmimo/estimation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "xlmimo/errors.hpp"

namespace xlmimo {

namespace {

// exp(-2 pi i r / n) for 0 <= r < n.
cdouble unit_root(long long r, long long n)
{
    if ((4 * r) % n == 0)
    {
        switch ((4 * r) / n)
        {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
        }
    }
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

} // namespace

PilotCodebook pilot_codebook(int tau_p, int K)
{
    if (K > tau_p)
        throw InfeasibleError("insufficient pilot sequences: " + std::to_string(K) +
                              " users, length " + std::to_string(tau_p));
    PilotCodebook book;
    book.psi.resize(tau_p, K);
    for (int j = 0; j < tau_p; ++j)
        for (int k = 0; k < K; ++k)
            book.psi(j, k) = unit_root((static_cast<long long>(j) * k) % tau_p, tau_p);
    return book;
}

ChannelEstimate simulate_pilot_phase(const CMatrix &H, const PilotCodebook &pilots, double p_p,
                                     double sigma2, RandomStream &rng)
{
    const auto M = H.rows();
    const auto tau_p = pilots.psi.rows();
    const double amp = std::sqrt(p_p);

    CMatrix Y = amp * (H * pilots.psi.adjoint());
    if (sigma2 > 0.0)
    {
        const double sd = std::sqrt(sigma2);
        for (Eigen::Index j = 0; j < tau_p; ++j)
            for (Eigen::Index m = 0; m < M; ++m)
                Y(m, j) += sd * rng.complex_normal();
    }

    ChannelEstimate est;
    est.H_hat = (Y * pilots.psi) / (static_cast<double>(tau_p) * amp);
    est.noise_scale = sigma2 / (static_cast<double>(tau_p) * p_p);
    return est;
}

ChannelEstimate simulate_pilot_phase(const ChannelRealization &channel, const SystemConfig &cfg,
                                     RandomStream &rng)
{
    const int K = static_cast<int>(channel.H.cols());
    return simulate_pilot_phase(channel.H, pilot_codebook(K, K), cfg.p_p, cfg.sigma2_ul_w(), rng);
}

} // namespace xlmimo
