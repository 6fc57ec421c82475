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

#ifndef XLMIMO_SELECTION_HPP
#define XLMIMO_SELECTION_HPP

#include <span>
#include <string_view>
#include <vector>

#include "xlmimo/channel.hpp"

namespace xlmimo {

enum class Scheme
{
    mr,
    zf,
};

std::string_view to_string(Scheme s) noexcept;

/// Accepts "mr"/"zf" in any case; throws std::invalid_argument otherwise.
Scheme parse_scheme(std::string_view text);

/// Per-antenna HRNP scores for every user.
///
/// theta(m, k) = |h_mk|^2 / sum_{i != k} |h_mi|^2. Where the interference sum
/// is zero the score is +inf if |h_mk| > 0 and 0 otherwise; ties among +inf
/// entries are broken by `signal_power`, i.e. |h_mk|^2.
struct HrnpScores
{
    RMatrix theta;
    RMatrix signal_power;
};

HrnpScores hrnp_scores(const CMatrix &H_hat);

/// Score column of user k.
RVector hrnp_scores(const CMatrix &H_hat, int k);

/// Indices of the N best-scored antennas, best first. Order: higher theta,
/// then (among +inf scores) higher signal power, then lower index.
/// Throws std::invalid_argument unless 1 <= N <= theta.size().
std::vector<int> select_antennas(const RVector &theta, const RVector &signal_power, int N);
std::vector<int> select_antennas(const RVector &theta, int N);

/// Full antenna ordering per user; the first N entries of user k are D_k.
using AntennaRanking = std::vector<std::vector<int>>;

AntennaRanking rank_antennas(const CMatrix &H_hat);

/// MR combiner of user k restricted to D_k: v(D_k) = h_hat(D_k, k), 0 elsewhere.
CVector combine_mr(const CMatrix &H_hat, std::span<const int> D_k, int k);

/// ZF combiner of user k restricted to D_k: k-th column of
/// H_k (H_k^H H_k)^-1 with H_k = H_hat(D_k, :), solved through LDL^H.
///
/// Throws ZfInfeasibleError when |D_k| < K and SingularChannelError when the
/// Gram matrix has a pivot below `relative_tolerance` times its largest
/// diagonal entry.
CVector combine_zf(const CMatrix &H_hat, std::span<const int> D_k, int k,
                   double relative_tolerance = 1e-12);

/// Duality precoder W(:, k) = conj(V(:, k)) / ||V(:, k)||.
/// Throws ZeroCombinerError on an all-zero column.
CMatrix precode(const CMatrix &V);

struct SelectionResult
{
    Scheme scheme = Scheme::mr;
    int N = 0;
    std::vector<std::vector<int>> D; ///< per-user antennas, in selection order
    std::vector<int> D_union;        ///< ascending
    CMatrix V;
    CMatrix W;

    int n_act() const noexcept { return static_cast<int>(D_union.size()); }
};

/// Antenna selection followed by combining and precoding for every user.
SelectionResult build_selection(const CMatrix &H_hat, int N, Scheme scheme);

/// Same, reusing a ranking computed once for the estimate.
SelectionResult build_selection(const CMatrix &H_hat, const AntennaRanking &ranking, int N,
                                Scheme scheme);

/// Conventional processing: every antenna serves every user.
SelectionResult full_array_processing(const CMatrix &H_hat, Scheme scheme);

} // namespace xlmimo

#endif
