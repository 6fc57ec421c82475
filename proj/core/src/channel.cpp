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

#include "xlmimo/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "xlmimo/errors.hpp"

namespace xlmimo {

RVector antenna_positions(int M, double L)
{
    RVector x(M);
    if (M == 1)
    {
        x(0) = 0.0;
        return x;
    }
    const double spacing = L / (M - 1);
    for (int m = 0; m < M; ++m)
        x(m) = m * spacing;
    x(M - 1) = L;
    return x;
}

RMatrix antenna_user_distances(const RVector &antenna_x, const std::vector<UserPosition> &users)
{
    RMatrix d(antenna_x.size(), static_cast<Eigen::Index>(users.size()));
    for (Eigen::Index k = 0; k < d.cols(); ++k)
        for (Eigen::Index m = 0; m < d.rows(); ++m)
            d(m, k) = std::hypot(antenna_x(m) - users[k].x, users[k].y);
    return d;
}

UserLayout place_users(const SystemConfig &cfg, RandomStream &rng)
{
    UserLayout layout;
    layout.antenna_x = antenna_positions(cfg.M, cfg.L);
    layout.positions.resize(cfg.K);
    for (auto &p : layout.positions)
    {
        p.x = rng.uniform(0.0, cfg.L);
        p.y = rng.uniform(cfg.d_min, cfg.d_max);
    }
    layout.distances = antenna_user_distances(layout.antenna_x, layout.positions);
    return layout;
}

double pathloss(double distance, const SystemConfig &cfg)
{
    if (!(distance > 0.0))
        throw std::domain_error("pathloss: distance must be positive");
    return cfg.b0 * std::pow(distance, -cfg.gamma);
}

std::pair<int, int> region_span_range(int M)
{
    int lo = std::max(1, (M + 9) / 10);
    int hi = (3 * M) / 10;
    hi = std::min(hi, M - 1);
    lo = std::min(lo, M - 1);
    hi = std::max(hi, lo);
    return {lo, hi};
}

VisibilityMask make_visibility(int M, std::vector<std::vector<VisibilityRegion>> regions)
{
    VisibilityMask vm;
    const int K = static_cast<int>(regions.size());
    vm.mask = MaskMatrix::Zero(M, K);
    for (int k = 0; k < K; ++k)
    {
        for (const auto &r : regions[k])
        {
            if (r.span < 0 || r.first() < 0 || r.last() >= M)
                throw std::out_of_range("visibility region [" + std::to_string(r.first()) + ", " +
                                        std::to_string(r.last()) + "] outside array of " +
                                        std::to_string(M));
            for (int m = r.first(); m <= r.last(); ++m)
                vm.mask(m, k) = 1;
        }
    }
    vm.visible_sets.resize(K);
    for (int k = 0; k < K; ++k)
        for (int m = 0; m < M; ++m)
            if (vm.mask(m, k))
                vm.visible_sets[k].push_back(m);
    vm.regions = std::move(regions);
    return vm;
}

namespace {

VisibilityRegion draw_region(int M, std::pair<int, int> span_range, RandomStream &rng)
{
    VisibilityRegion r;
    r.span = static_cast<int>(rng.uniform_int(span_range.first, span_range.second));
    // c in [1, M - span] (1-based)
    r.start = static_cast<int>(rng.uniform_int(1, M - r.span)) - 1;
    return r;
}

bool pairwise_disjoint(const std::vector<VisibilityRegion> &regions)
{
    for (std::size_t i = 0; i < regions.size(); ++i)
        for (std::size_t j = i + 1; j < regions.size(); ++j)
            if (regions[i].first() <= regions[j].last() && regions[j].first() <= regions[i].last())
                return false;
    return true;
}

constexpr int kMaxPlacementAttempts = 1'000'000;

} // namespace

VisibilityMask draw_visibility(const SystemConfig &cfg, RandomStream &rng)
{
    const auto span_range = region_span_range(cfg.M);
    std::vector<std::vector<VisibilityRegion>> regions(cfg.K);
    for (auto &user : regions)
    {
        user.resize(cfg.N_c);
        int attempts = 0;
        do
        {
            if (++attempts > kMaxPlacementAttempts)
                throw InfeasibleError("could not place " + std::to_string(cfg.N_c) +
                                      " disjoint visibility regions on " + std::to_string(cfg.M) +
                                      " antennas");
            for (auto &r : user)
                r = draw_region(cfg.M, span_range, rng);
        } while (cfg.vr_placement == VrPlacement::disjoint && !pairwise_disjoint(user));
    }
    return make_visibility(cfg.M, std::move(regions));
}

ChannelRealization realize_channel(const UserLayout &layout, const VisibilityMask &mask,
                                   const SystemConfig &cfg, RandomStream &rng)
{
    const auto M = layout.distances.rows();
    const auto K = layout.distances.cols();
    if (mask.mask.rows() != M || mask.mask.cols() != K)
        throw std::invalid_argument("realize_channel: mask and layout dimensions differ");

    ChannelRealization ch;
    ch.pathloss.resize(M, K);
    ch.smallfading.resize(M, K);
    ch.H.resize(M, K);
    for (Eigen::Index k = 0; k < K; ++k)
    {
        for (Eigen::Index m = 0; m < M; ++m)
        {
            ch.pathloss(m, k) = pathloss(layout.distances(m, k), cfg);
            ch.smallfading(m, k) = rng.complex_normal();
            ch.H(m, k) = mask.mask(m, k) ? std::sqrt(ch.pathloss(m, k)) * ch.smallfading(m, k)
                                         : cdouble{0.0, 0.0};
        }
    }
    ch.mask = mask;
    ch.layout = layout;
    return ch;
}

} // namespace xlmimo
