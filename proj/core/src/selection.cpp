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

#include "xlmimo/selection.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "xlmimo/errors.hpp"
#include "xlmimo/ldl.hpp"

namespace xlmimo {

std::string_view to_string(Scheme s) noexcept { return s == Scheme::mr ? "mr" : "zf"; }

Scheme parse_scheme(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "mr")
        return Scheme::mr;
    if (lower == "zf")
        return Scheme::zf;
    throw std::invalid_argument("unknown scheme '" + std::string(text) + "'");
}

HrnpScores hrnp_scores(const CMatrix &H_hat)
{
    const auto M = H_hat.rows();
    const auto K = H_hat.cols();
    HrnpScores s;
    s.signal_power = H_hat.cwiseAbs2();
    s.theta.resize(M, K);
    for (Eigen::Index m = 0; m < M; ++m)
    {
        for (Eigen::Index k = 0; k < K; ++k)
        {
            const double signal = s.signal_power(m, k);
            double interference = 0.0;
            for (Eigen::Index i = 0; i < K; ++i)
                if (i != k)
                    interference += s.signal_power(m, i);
            if (signal == 0.0)
                s.theta(m, k) = 0.0;
            else if (interference == 0.0)
                s.theta(m, k) = std::numeric_limits<double>::infinity();
            else
                s.theta(m, k) = signal / interference;
        }
    }
    return s;
}

RVector hrnp_scores(const CMatrix &H_hat, int k) { return hrnp_scores(H_hat).theta.col(k); }

std::vector<int> select_antennas(const RVector &theta, const RVector &signal_power, int N)
{
    const int M = static_cast<int>(theta.size());
    if (N < 1 || N > M)
        throw std::invalid_argument("select_antennas: N=" + std::to_string(N) +
                                    " outside [1, " + std::to_string(M) + "]");
    std::vector<int> idx(M);
    std::iota(idx.begin(), idx.end(), 0);
    const auto better = [&](int a, int b) {
        if (theta(a) != theta(b))
            return theta(a) > theta(b);
        if (std::isinf(theta(a)) && signal_power.size() == theta.size() &&
            signal_power(a) != signal_power(b))
            return signal_power(a) > signal_power(b);
        return a < b;
    };
    std::partial_sort(idx.begin(), idx.begin() + N, idx.end(), better);
    idx.resize(N);
    return idx;
}

std::vector<int> select_antennas(const RVector &theta, int N)
{
    return select_antennas(theta, RVector{}, N);
}

AntennaRanking rank_antennas(const CMatrix &H_hat)
{
    const auto scores = hrnp_scores(H_hat);
    const int M = static_cast<int>(H_hat.rows());
    AntennaRanking ranking(H_hat.cols());
    for (Eigen::Index k = 0; k < H_hat.cols(); ++k)
        ranking[k] = select_antennas(scores.theta.col(k), scores.signal_power.col(k), M);
    return ranking;
}

CVector combine_mr(const CMatrix &H_hat, std::span<const int> D_k, int k)
{
    CVector v = CVector::Zero(H_hat.rows());
    for (int m : D_k)
        v(m) = H_hat(m, k);
    return v;
}

CVector combine_zf(const CMatrix &H_hat, std::span<const int> D_k, int k, double relative_tolerance)
{
    const auto K = H_hat.cols();
    const auto N = static_cast<Eigen::Index>(D_k.size());
    if (N < K)
        throw ZfInfeasibleError("zf-infeasible: " + std::to_string(N) +
                                " selected antennas for " + std::to_string(K) + " users");

    CMatrix Hk(N, K);
    for (Eigen::Index r = 0; r < N; ++r)
        Hk.row(r) = H_hat.row(D_k[r]);

    CMatrix gram(K, K);
    gram.triangularView<Eigen::Lower>() = Hk.adjoint() * Hk;
    gram.triangularView<Eigen::StrictlyUpper>() = gram.adjoint().triangularView<Eigen::StrictlyUpper>();

    const LdlFactorization ldl(gram, relative_tolerance);
    const CVector x = ldl.solve(CVector::Unit(K, k));
    const CVector restricted = Hk * x;

    CVector v = CVector::Zero(H_hat.rows());
    for (Eigen::Index r = 0; r < N; ++r)
        v(D_k[r]) = restricted(r);
    return v;
}

CMatrix precode(const CMatrix &V)
{
    CMatrix W(V.rows(), V.cols());
    for (Eigen::Index k = 0; k < V.cols(); ++k)
    {
        const double norm = V.col(k).norm();
        if (!(norm > 0.0))
            throw ZeroCombinerError("zero combiner for user " + std::to_string(k + 1));
        W.col(k) = V.col(k).conjugate() / norm;
    }
    return W;
}

namespace {

SelectionResult assemble(const CMatrix &H_hat, std::vector<std::vector<int>> D, int N, Scheme scheme)
{
    const auto M = H_hat.rows();
    const auto K = H_hat.cols();
    SelectionResult out;
    out.scheme = scheme;
    out.N = N;
    out.V.resize(M, K);

    std::vector<char> active(M, 0);
    for (Eigen::Index k = 0; k < K; ++k)
    {
        for (int m : D[k])
            active[m] = 1;
        out.V.col(k) = scheme == Scheme::mr ? combine_mr(H_hat, D[k], static_cast<int>(k))
                                            : combine_zf(H_hat, D[k], static_cast<int>(k));
    }
    for (Eigen::Index m = 0; m < M; ++m)
        if (active[m])
            out.D_union.push_back(static_cast<int>(m));
    out.D = std::move(D);
    out.W = precode(out.V);
    return out;
}

} // namespace

SelectionResult build_selection(const CMatrix &H_hat, const AntennaRanking &ranking, int N,
                                Scheme scheme)
{
    const int M = static_cast<int>(H_hat.rows());
    if (N < 1 || N > M)
        throw InfeasibleError("N=" + std::to_string(N) + " outside [1, " + std::to_string(M) + "]");
    if (scheme == Scheme::zf && N < H_hat.cols())
        throw ZfInfeasibleError("zf-infeasible: N=" + std::to_string(N) + " < K=" +
                                std::to_string(H_hat.cols()));
    std::vector<std::vector<int>> D(ranking.size());
    for (std::size_t k = 0; k < ranking.size(); ++k)
        D[k].assign(ranking[k].begin(), ranking[k].begin() + N);
    return assemble(H_hat, std::move(D), N, scheme);
}

SelectionResult build_selection(const CMatrix &H_hat, int N, Scheme scheme)
{
    return build_selection(H_hat, rank_antennas(H_hat), N, scheme);
}

SelectionResult full_array_processing(const CMatrix &H_hat, Scheme scheme)
{
    const int M = static_cast<int>(H_hat.rows());
    if (scheme == Scheme::zf && M < H_hat.cols())
        throw ZfInfeasibleError("zf-infeasible: M=" + std::to_string(M) + " < K=" +
                                std::to_string(H_hat.cols()));
    std::vector<int> all(M);
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<int>> D(H_hat.cols(), all);
    return assemble(H_hat, std::move(D), M, scheme);
}

} // namespace xlmimo
