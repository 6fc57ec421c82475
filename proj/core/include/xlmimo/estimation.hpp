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

#ifndef XLMIMO_ESTIMATION_HPP
#define XLMIMO_ESTIMATION_HPP

#include "xlmimo/channel.hpp"

namespace xlmimo {

/// tau_p x K matrix of unit-modulus pilot symbols with Psi^H Psi = tau_p I.
struct PilotCodebook
{
    CMatrix psi;

    int length() const noexcept { return static_cast<int>(psi.rows()); }
    int users() const noexcept { return static_cast<int>(psi.cols()); }
};

struct ChannelEstimate
{
    CMatrix H_hat;
    double noise_scale = 0.0; ///< per-element error variance sigma_ul^2 / (tau_p p_p)
};

/// First K columns of the tau_p-point DFT matrix. Entries at multiples of a
/// quarter turn are exact. Throws InfeasibleError if K > tau_p.
PilotCodebook pilot_codebook(int tau_p, int K);

/// Forms Y_p = sqrt(p_p) H Psi^H + N_p with N_p ~ CN(0, sigma2) elementwise
/// and returns the LS estimate Y_p Psi / (tau_p sqrt(p_p)).
ChannelEstimate simulate_pilot_phase(const CMatrix &H, const PilotCodebook &pilots, double p_p,
                                     double sigma2, RandomStream &rng);

/// Same, with tau_p = K, the configured pilot power and UL noise.
ChannelEstimate simulate_pilot_phase(const ChannelRealization &channel, const SystemConfig &cfg,
                                     RandomStream &rng);

} // namespace xlmimo

#endif
