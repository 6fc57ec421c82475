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

#ifndef XLMIMO_CHANNEL_HPP
#define XLMIMO_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "xlmimo/config.hpp"
#include "xlmimo/random.hpp"

namespace xlmimo {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using MaskMatrix = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

struct UserPosition
{
    double x = 0.0;
    double y = 0.0;
};

/// Antenna abscissae along the array, user positions and the M x K
/// antenna-to-user distance matrix.
struct UserLayout
{
    std::vector<UserPosition> positions;
    RVector antenna_x;
    RMatrix distances;
};

/// One contiguous visibility region: antennas `start .. start + span`
/// (0-based, inclusive), i.e. span + 1 antennas.
struct VisibilityRegion
{
    int start = 0;
    int span = 0;

    int first() const noexcept { return start; }
    int last() const noexcept { return start + span; }
};

/// Per-user visibility regions and the resulting M x K binary mask.
struct VisibilityMask
{
    std::vector<std::vector<VisibilityRegion>> regions; // [user][region]
    MaskMatrix mask;                                    // a_mk
    std::vector<std::vector<int>> visible_sets;         // C_k, ascending, 0-based

    int antennas() const noexcept { return static_cast<int>(mask.rows()); }
    int users() const noexcept { return static_cast<int>(mask.cols()); }
};

/// True channel h_mk = a_mk sqrt(b_mk) hbar_mk with its ingredients.
struct ChannelRealization
{
    CMatrix H;
    RMatrix pathloss;
    CMatrix smallfading;
    VisibilityMask mask;
    UserLayout layout;
};

/// Uniform linear array from 0 to L.
RVector antenna_positions(int M, double L);

/// Distances between every antenna (a_m, 0) and every user.
RMatrix antenna_user_distances(const RVector &antenna_x, const std::vector<UserPosition> &users);

/// Users uniform over [0, L] x [d_min, d_max].
UserLayout place_users(const SystemConfig &cfg, RandomStream &rng);

/// b0 * d^-gamma. Throws std::domain_error for d <= 0.
double pathloss(double distance, const SystemConfig &cfg);

/// Inclusive range [lo, hi] of region spans N_ik: [ceil(M/10), floor(3M/10)],
/// clamped so that at least one span is available and c_ik can be drawn.
std::pair<int, int> region_span_range(int M);

/// Assembles mask and visible sets from explicit regions. Throws
/// std::out_of_range if a region leaves [0, M).
VisibilityMask make_visibility(int M, std::vector<std::vector<VisibilityRegion>> regions);

/// Draws N_c regions per user according to cfg.vr_placement.
VisibilityMask draw_visibility(const SystemConfig &cfg, RandomStream &rng);

/// Draws unit-variance Rayleigh fading and assembles H.
ChannelRealization realize_channel(const UserLayout &layout, const VisibilityMask &mask,
                                   const SystemConfig &cfg, RandomStream &rng);

} // namespace xlmimo

#endif
