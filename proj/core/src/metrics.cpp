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

#include "xlmimo/metrics.hpp"

#include <cmath>
#include <string>

#include "xlmimo/errors.hpp"

namespace xlmimo {

double sinr_ul(const CMatrix &H, const CMatrix &V, std::span<const double> p_ul, double sigma2,
               int k)
{
    const auto v = V.col(k);
    const double norm2 = v.squaredNorm();
    if (!(norm2 > 0.0))
        throw ZeroCombinerError("zero combiner for user " + std::to_string(k + 1));
    double signal = 0.0;
    double interference = 0.0;
    for (Eigen::Index i = 0; i < H.cols(); ++i)
    {
        const double g = std::norm(v.dot(H.col(i))); // v^H h_i
        if (i == k)
            signal = p_ul[i] * g;
        else
            interference += p_ul[i] * g;
    }
    return signal / (interference + sigma2 * norm2);
}

double sinr_dl(const CMatrix &H, const CMatrix &W, std::span<const double> p_dl, double sigma2,
               int k)
{
    const auto h = H.col(k);
    double signal = 0.0;
    double interference = 0.0;
    for (Eigen::Index i = 0; i < W.cols(); ++i)
    {
        const double g = std::norm(h.cwiseProduct(W.col(i)).sum()); // h_k^T w_i
        if (i == k)
            signal = p_dl[i] * g;
        else
            interference += p_dl[i] * g;
    }
    return signal / (interference + sigma2);
}

SpectralEfficiency ergodic_se(std::span<const double> sinr_ul, std::span<const double> sinr_dl,
                              const FrameStructure &frame)
{
    SpectralEfficiency se;
    for (double g : sinr_ul)
        se.ul += std::log2(1.0 + g);
    for (double g : sinr_dl)
        se.dl += std::log2(1.0 + g);
    se.ul *= frame.tau_u / frame.tau_c;
    se.dl *= frame.tau_d / frame.tau_c;
    return se;
}

ReceivedPower received_power(const CMatrix &H, const CMatrix &V, const CMatrix &W,
                             std::span<const double> p_ul, std::span<const double> p_dl,
                             double sigma2_ul, double sigma2_dl)
{
    const auto K = H.cols();
    const CMatrix g_ul = V.adjoint() * H;  // (k, i) = v_k^H h_i
    const CMatrix g_dl = H.transpose() * W; // (k, i) = h_k^T w_i

    ReceivedPower p;
    for (Eigen::Index k = 0; k < K; ++k)
    {
        for (Eigen::Index i = 0; i < K; ++i)
        {
            if (i == k)
            {
                p.s_ul += p_ul[k] * std::norm(g_ul(k, k));
                p.s_dl += p_dl[k] * std::norm(g_dl(k, k));
            }
            else
            {
                p.i_ul += p_ul[i] * std::norm(g_ul(k, i));
                p.i_dl += p_dl[i] * std::norm(g_dl(k, i));
            }
        }
        p.n_ul += sigma2_ul * V.col(k).squaredNorm();
    }
    const double inv_k = 1.0 / static_cast<double>(K);
    p.s_ul *= inv_k;
    p.i_ul *= inv_k;
    p.n_ul *= inv_k;
    p.s_dl *= inv_k;
    p.i_dl *= inv_k;
    p.n_dl = sigma2_dl;
    return p;
}

ReceivedPower to_dbm(const ReceivedPower &w)
{
    return {watts_to_dbm(w.s_ul), watts_to_dbm(w.i_ul), watts_to_dbm(w.n_ul),
            watts_to_dbm(w.s_dl), watts_to_dbm(w.i_dl), watts_to_dbm(w.n_dl)};
}

std::vector<double> uplink_powers(const SystemConfig &cfg, int K)
{
    return std::vector<double>(K, cfg.p_ul);
}

std::vector<double> downlink_powers(const SystemConfig &cfg, int K)
{
    return std::vector<double>(K, cfg.P_dl_total / K);
}

RealizationMetrics evaluate_link(const CMatrix &H, const SelectionResult &sel,
                                 const SystemConfig &cfg, const FrameStructure &frame)
{
    const int K = static_cast<int>(H.cols());
    const auto p_ul = uplink_powers(cfg, K);
    const auto p_dl = downlink_powers(cfg, K);
    const double s2_ul = cfg.sigma2_ul_w();
    const double s2_dl = cfg.sigma2_dl_w();

    // Both cross-gain matrices only touch rows in the supports D_k.
    const CMatrix Ht = H.transpose(); // column m holds antenna m's gains to all users
    CMatrix g_ul = CMatrix::Zero(K, K); // (i, k) = v_k^H h_i
    CMatrix g_dl = CMatrix::Zero(K, K); // (i, k) = h_i^T w_k
    std::vector<double> v_norm2(K, 0.0);
    for (int k = 0; k < K; ++k)
    {
        auto ul = g_ul.col(k);
        auto dl = g_dl.col(k);
        for (int m : sel.D[k])
        {
            const cdouble v = std::conj(sel.V(m, k));
            const cdouble w = sel.W(m, k);
            v_norm2[k] += std::norm(v);
            ul.noalias() += v * Ht.col(m);
            dl.noalias() += w * Ht.col(m);
        }
        if (!(v_norm2[k] > 0.0))
            throw ZeroCombinerError("zero combiner for user " + std::to_string(k + 1));
    }

    RealizationMetrics out;
    out.sinr_ul.resize(K);
    out.sinr_dl.resize(K);
    ReceivedPower &p = out.power;
    for (int k = 0; k < K; ++k)
    {
        double sig_ul = 0.0, int_ul = 0.0, sig_dl = 0.0, int_dl = 0.0;
        for (int i = 0; i < K; ++i)
        {
            const double a = p_ul[i] * std::norm(g_ul(i, k));
            const double b = p_dl[i] * std::norm(g_dl(k, i));
            if (i == k)
            {
                sig_ul = a;
                sig_dl = b;
            }
            else
            {
                int_ul += a;
                int_dl += b;
            }
        }
        const double noise_ul = s2_ul * v_norm2[k];
        out.sinr_ul[k] = sig_ul / (int_ul + noise_ul);
        out.sinr_dl[k] = sig_dl / (int_dl + s2_dl);
        p.s_ul += sig_ul;
        p.i_ul += int_ul;
        p.n_ul += noise_ul;
        p.s_dl += sig_dl;
        p.i_dl += int_dl;
    }
    const double inv_k = 1.0 / K;
    p.s_ul *= inv_k;
    p.i_ul *= inv_k;
    p.n_ul *= inv_k;
    p.s_dl *= inv_k;
    p.i_dl *= inv_k;
    p.n_dl = s2_dl;

    const auto se = ergodic_se(out.sinr_ul, out.sinr_dl, frame);
    out.se_ul = se.ul;
    out.se_dl = se.dl;
    out.se_total = se.total();
    return out;
}

} // namespace xlmimo
