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

// Acceptance suite: one PASS/FAIL line per criterion, sub-checks indented
// below it. Exit status is non-zero when a criterion fails that is not listed
// in kKnownRed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "xlmimo/config.hpp"
#include "xlmimo/cost_model.hpp"
#include "xlmimo/engine.hpp"
#include "xlmimo/estimation.hpp"
#include "xlmimo/metrics.hpp"
#include "xlmimo/selection.hpp"

using namespace xlmimo;

namespace {

// Criteria that fail under a faithful implementation; see README.
const std::set<std::string> kKnownRed = {"7"};

constexpr int kRealizations = 1000;

struct Outcome
{
    bool pass = true;
    std::string summary;
    std::vector<std::string> details;

    void check(bool ok, const std::string &line)
    {
        pass = pass && ok;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
    }
};

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

EngineOptions quiet() { return {}; }

// Shared Monte Carlo results, computed once.
struct Cache
{
    std::map<std::pair<int, Scheme>, OptimalN> optimal;
    std::map<std::pair<int, Scheme>, AggregateResult> no_as;
    std::map<int, std::vector<AggregateResult>> mr_sweep; // K -> AS, full grid

    const OptimalN &optimal_n(int K, Scheme s)
    {
        auto it = optimal.find({K, s});
        if (it == optimal.end())
        {
            SystemConfig cfg;
            cfg.realizations = kRealizations;
            it = optimal.emplace(std::pair{K, s}, find_optimal_n(cfg, s, K, coarse_grid(cfg.M), quiet())).first;
        }
        return it->second;
    }

    const AggregateResult &full_array(int K, Scheme s)
    {
        auto it = no_as.find({K, s});
        if (it == no_as.end())
        {
            SystemConfig cfg;
            cfg.K = K;
            SweepSpec spec;
            spec.values = {cfg.M};
            spec.schemes = {s};
            spec.as_enabled = false;
            spec.realizations = kRealizations;
            spec.seed = cfg.seed;
            it = no_as.emplace(std::pair{K, s}, run_sweep(cfg, spec, quiet()).front()).first;
        }
        return it->second;
    }

    const std::vector<AggregateResult> &mr_n_sweep(int K)
    {
        auto it = mr_sweep.find(K);
        if (it == mr_sweep.end())
        {
            SystemConfig cfg;
            cfg.K = K;
            SweepSpec spec;
            spec.values = full_grid(cfg.M);
            spec.schemes = {Scheme::mr};
            spec.realizations = kRealizations;
            spec.seed = cfg.seed;
            it = mr_sweep.emplace(K, run_sweep(cfg, spec, quiet())).first;
        }
        return it->second;
    }
};

Cache cache;

Outcome criterion_1()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = complexity_table();
    const double elapsed = seconds_since(t0);
    const long long expect[4][4] = {
        {4, 1, 4, 1}, {62, 12, 76, 14}, {990, 369, 3848, 819}, {15834, 17551, 702031, 126822}};
    int matched = 0;
    for (int i = 0; i < 4; ++i)
    {
        const long long got[4] = {round_half_up(rows[i].no_as_mr), round_half_up(rows[i].as_mr),
                                  round_half_up(rows[i].no_as_zf), round_half_up(rows[i].as_zf)};
        bool row_ok = true;
        for (int j = 0; j < 4; ++j)
        {
            matched += got[j] == expect[i][j];
            row_ok = row_ok && got[j] == expect[i][j];
        }
        o.check(row_ok, fmt("(%d,%d,%d): %lld %lld %lld %lld, expected %lld %lld %lld %lld", rows[i].M,
                            rows[i].N, rows[i].K, got[0], got[1], got[2], got[3], expect[i][0],
                            expect[i][1], expect[i][2], expect[i][3]));
    }
    o.check(elapsed < 1.0, fmt("runtime %.4f s < 1 s", elapsed));
    o.summary = fmt("Table III reproduction: %d/16 cells exact", matched);
    return o;
}

Outcome criterion_2()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    constexpr int R = 10000;
    double mean_c = 0.0;
    for (int K : {4, 40})
    {
        SystemConfig cfg;
        cfg.K = K;
        double visible = 0.0;
        for (int r = 0; r < R; ++r)
        {
            RandomStream rng(cfg.seed, r, Stage::visibility);
            const VisibilityMask vm = draw_visibility(cfg, rng);
            for (const auto &set : vm.visible_sets)
                visible += static_cast<double>(set.size());
        }
        const double c_k = visible / (double(R) * K);
        const double per_antenna = visible / (double(R) * cfg.M);
        if (K == 4)
        {
            mean_c = c_k;
            o.check(std::abs(c_k - 55.8) <= 2.0, fmt("mean |C_k| = %.3f, target 55.8 +/- 2.0", c_k));
            o.check(std::abs(per_antenna - 2.23) <= 0.15,
                    fmt("K=4 users per antenna = %.4f, target 2.23 +/- 0.15", per_antenna));
        }
        else
        {
            o.check(std::abs(per_antenna - 22.3) <= 1.0,
                    fmt("K=40 users per antenna = %.3f, target 22.3 +/- 1.0", per_antenna));
        }
    }
    const double elapsed = seconds_since(t0);
    o.check(elapsed < 10.0, fmt("runtime %.2f s < 10 s", elapsed));
    o.summary = fmt("visibility statistics over %d realizations: mean |C_k| = %.2f", R, mean_c);
    return o;
}

Outcome criterion_3()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    oracle::Gen g(2024);
    double worst_gain = 0.0, worst_cross = 0.0, worst_oracle = 0.0;
    int instances = 0;
    while (instances < 1000)
    {
        const int K = g.integer(1, 8);
        const int M = g.integer(K, 32);
        const int N = g.integer(K, M);
        const CMatrix H = g.matrix(M, K);
        std::vector<int> D(M);
        std::iota(D.begin(), D.end(), 0);
        std::shuffle(D.begin(), D.end(), g.engine());
        D.resize(N);
        CMatrix Hk(N, K);
        for (int r = 0; r < N; ++r)
            Hk.row(r) = H.row(D[r]);
        Eigen::JacobiSVD<CMatrix> svd(Hk);
        if (svd.singularValues()(K - 1) < 1e-8 * svd.singularValues()(0))
            continue; // not full rank
        ++instances;
        for (int k = 0; k < K; ++k)
        {
            const CVector v = combine_zf(H, D, k);
            CVector vr(N);
            for (int r = 0; r < N; ++r)
                vr(r) = v(D[r]);
            const Eigen::RowVectorXcd gains = vr.adjoint() * Hk;
            for (int j = 0; j < K; ++j)
            {
                if (j == k)
                    worst_gain = std::max(worst_gain, std::abs(gains(j) - 1.0));
                else
                    worst_cross = std::max(worst_cross, std::abs(gains(j)));
            }
            const CVector ref = oracle::zf_column_svd(Hk, k);
            worst_oracle = std::max(worst_oracle, (vr - ref).norm() / ref.norm());
        }
    }
    const double elapsed = seconds_since(t0);
    o.check(worst_gain < 1e-9, fmt("max |v_k^H h_k - 1| = %.3e < 1e-9", worst_gain));
    o.check(worst_cross < 1e-9, fmt("max |v_k^H h_j|, j != k = %.3e < 1e-9", worst_cross));
    o.check(worst_oracle < 1e-9, fmt("max relative distance to least-squares oracle = %.3e < 1e-9", worst_oracle));
    o.check(elapsed < 10.0, fmt("runtime %.2f s < 10 s", elapsed));
    o.summary = fmt("ZF property suite over %d full-rank instances (N >= K, K <= 8)", instances);
    return o;
}

Outcome criterion_4()
{
    Outcome o;
    const SystemConfig cfg;
    double worst = 0.0;
    bool bitwise = true;
    for (int r = 0; r < 100; ++r)
    {
        const RealizationState s = prepare_realization(cfg, r);
        RandomStream rng(cfg.seed, r, Stage::pilot_noise);
        const ChannelEstimate est =
            simulate_pilot_phase(s.channel.H, pilot_codebook(cfg.K, cfg.K), cfg.p_p, 0.0, rng);
        const double scale = s.channel.H.cwiseAbs().maxCoeff();
        worst = std::max(worst, (est.H_hat - s.channel.H).cwiseAbs().maxCoeff() / scale);
        bitwise = bitwise && est.H_hat == s.channel.H;
    }
    o.check(worst <= 1e-12, fmt("noiseless: max |H_hat - H| / max|H| = %.2e <= 1e-12 (bitwise equal: %s)", worst,
                                bitwise ? "yes" : "no"));

    const double expected = cfg.sigma2_ul_w() / (cfg.K * cfg.p_p);
    std::vector<double> power, re;
    for (int r = 0; power.size() < 100000; ++r)
    {
        const RealizationState s = prepare_realization(cfg, r);
        const CMatrix E = s.estimate.H_hat - s.channel.H;
        for (Eigen::Index i = 0; i < E.size(); ++i)
        {
            power.push_back(std::norm(E.data()[i]));
            re.push_back(E.data()[i].real());
        }
    }
    const double var = oracle::mean(power);
    const double rel = var / expected - 1.0;
    o.check(std::abs(rel) <= 0.03, fmt("error variance %.4e vs sigma^2/(tau_p p_p) = %.4e (%+.2f%%, limit 3%%)", var,
                                       expected, 100.0 * rel));
    const double bias = oracle::mean(re);
    const double se = std::sqrt(expected / 2.0 / double(re.size()));
    o.check(std::abs(bias) <= 3.0 * se, fmt("mean real error %.3e within 3 standard errors (%.3e)", bias, 3.0 * se));
    o.summary = fmt("LS estimator statistics over %zu error samples", power.size());
    return o;
}

Outcome criterion_5()
{
    Outcome o;
    SystemConfig cfg;
    SweepSpec spec;
    spec.values = {100};
    spec.schemes = {Scheme::zf};
    spec.realizations = kRealizations;
    const AggregateResult r = run_sweep(cfg, spec, quiet()).front();
    const ReceivedPower dbm = r.power_dbm();
    o.check(std::abs(dbm.n_dl + 80.0) <= 1e-12, fmt("N_DL = %.12f dBm, expected -80", dbm.n_dl));
    o.check(std::abs(dbm.s_ul - 20.0) <= 0.5, fmt("ZF S_UL at K=4, N=100 = %.4f dBm, target 20 +/- 0.5", dbm.s_ul));
    o.summary = fmt("received-power fixed points (N_DL = %.2f dBm, S_UL = %.3f dBm)", dbm.n_dl, dbm.s_ul);
    return o;
}

Outcome criterion_6()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    struct Target
    {
        int K;
        Scheme s;
        int lo, hi;
        const char *text;
    };
    const Target targets[] = {{4, Scheme::mr, 1, 3, "{1,2,3}"},
                              {4, Scheme::zf, 4, 8, "6 +/- 2"},
                              {2, Scheme::mr, 1, 5, "3 +/- 2"},
                              {24, Scheme::mr, 43, 53, "48 +/- 5"}};
    std::string got;
    for (const auto &t : targets)
    {
        const OptimalN &best = cache.optimal_n(t.K, t.s);
        o.check(best.n_star >= t.lo && best.n_star <= t.hi,
                fmt("%s K=%d: N* = %d, accepted %s (EE %.4g bit/J)", std::string(to_string(t.s)).c_str(), t.K,
                    best.n_star, t.text, best.ee_star));
        got += (got.empty() ? "" : ", ") + std::to_string(best.n_star);
    }
    const double elapsed = seconds_since(t0);
    o.check(elapsed < 1800.0, fmt("runtime %.1f s < 30 min (coarse grid)", elapsed));
    o.summary = "N* reproduction on the coarse grid: " + got;
    return o;
}

int first_full_activation(const std::vector<AggregateResult> &sweep, int M)
{
    for (const auto &r : sweep)
        if (r.n_act.mean >= M - 0.5)
            return r.value;
    return -1;
}

Outcome criterion_7()
{
    Outcome o;
    const int M = SystemConfig{}.M;

    // (a)
    {
        const auto &sweep = cache.mr_n_sweep(4);
        const AggregateResult &full = cache.full_array(4, Scheme::mr);
        int best_n = 0;
        double best = 0.0;
        for (const auto &r : sweep)
            if (r.value < M && r.throughput.mean > best)
            {
                best = r.throughput.mean;
                best_n = r.value;
            }
        o.check(best > full.throughput.mean,
                fmt("(a) K=4 MR throughput with selection peaks at %.1f Mbit/s (N=%d) vs %.1f Mbit/s without",
                    best / 1e6, best_n, full.throughput.mean / 1e6));
    }
    // (b)
    {
        const auto &sweep = cache.mr_n_sweep(40);
        const AggregateResult &full = cache.full_array(40, Scheme::mr);
        double worst_margin = -1e300, worst_gain = 0.0, worst_noise = 0.0;
        int worst_n = 0, violations = 0;
        for (const auto &r : sweep)
        {
            const double gain = r.ee.mean - full.ee.mean;
            const double noise = 3.0 * std::hypot(r.ee.std_error, full.ee.std_error);
            violations += gain > noise;
            if (gain - noise > worst_margin)
            {
                worst_margin = gain - noise;
                worst_gain = gain;
                worst_noise = noise;
                worst_n = r.value;
            }
        }
        o.check(violations == 0,
                fmt("(b) K=40 MR: EE gain over full array <= 3 standard errors of the difference at every N; "
                    "worst N=%d gain %.4g bit/J (%+.2f%%) vs 3 SE %.4g bit/J, %d of %d points above",
                    worst_n, worst_gain, 100.0 * worst_gain / full.ee.mean, worst_noise, violations, M));
    }
    // (c)
    {
        const int n4 = first_full_activation(cache.mr_n_sweep(4), M);
        const int n40 = first_full_activation(cache.mr_n_sweep(40), M);
        o.check(std::abs(n4 - 34) <= 2, fmt("(c) K=4: mean N_act first reaches %g at N=%d, target 34 +/- 2", M - 0.5, n4));
        o.check(std::abs(n40 - 8) <= 2, fmt("(c) K=40: mean N_act first reaches %g at N=%d, target 8 +/- 2", M - 0.5, n40));
    }
    // (d)
    {
        const std::pair<Scheme, std::vector<int>> sets[] = {{Scheme::mr, {2, 4, 6, 8, 10, 12, 16, 20}},
                                                             {Scheme::zf, {2, 4, 6}}};
        for (const auto &[scheme, ks] : sets)
            for (int K : ks)
            {
                const OptimalN &best = cache.optimal_n(K, scheme);
                const AggregateResult &full = cache.full_array(K, scheme);
                o.check(best.ee_star >= full.ee.mean,
                        fmt("(d) %s K=%d: EE(N*=%d) = %.4g >= EE(full array) = %.4g bit/J",
                            std::string(to_string(scheme)).c_str(), K, best.n_star, best.ee_star, full.ee.mean));
            }
    }
    o.summary = "qualitative curve checks (a)-(d)";
    return o;
}

std::string run_cli(std::vector<std::string> args, int &code)
{
    std::vector<const char *> argv{"xlmimo"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str();
}

Outcome criterion_8()
{
    Outcome o;
    const std::vector<std::vector<std::string>> commands = {
        {"sweep-n", "--k", "4", "--scheme", "both", "--realizations", "60", "--seed", "5"},
        {"sweep-n", "--k", "8", "--no-as", "--realizations", "40"},
        {"sweep-k", "--k-list", "2,4,8", "--n", "6", "--scheme", "both", "--realizations", "40"},
        {"optimal-n", "--k-list", "2,4", "--scheme", "zf", "--coarse", "--realizations", "30"},
        {"table3", "--csv"},
    };
    for (const auto &cmd : commands)
    {
        std::string label;
        for (const auto &a : cmd)
            label += (label.empty() ? "" : " ") + a;
        int c1 = 0, c2 = 0, c3 = 0;
        auto one = cmd;
        one.insert(one.begin(), {"--quiet", "--threads", "1"});
        auto four = cmd;
        four.insert(four.begin(), {"--quiet", "--threads", "4"});
        const std::string a = run_cli(one, c1);
        const std::string b = run_cli(one, c2);
        const std::string c = run_cli(four, c3);
        o.check(c1 == 0 && c2 == 0 && c3 == 0 && a == b && a == c && !a.empty(),
                fmt("%s: %zu bytes, identical across reruns and 1 vs 4 workers", label.c_str(), a.size()));
    }
    o.summary = "determinism of CLI output";
    return o;
}

} // namespace

int main(int argc, char **argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1", criterion_1}, {"2", criterion_2}, {"3", criterion_3}, {"4", criterion_4},
        {"5", criterion_5}, {"6", criterion_6}, {"7", criterion_7}, {"8", criterion_8},
    };
    std::set<std::string> only;
    for (int i = 1; i < argc; ++i)
        only.insert(argv[i]);

    int unexpected = 0;
    for (const auto &[id, fn] : criteria)
    {
        if (!only.empty() && !only.count(id))
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        const Outcome o = fn();
        const double elapsed = seconds_since(t0);
        const bool known = kKnownRed.count(id) > 0;
        const char *tag = o.pass ? (known ? "PASS (listed as known red)" : "PASS")
                                 : (known ? "FAIL (known red)" : "FAIL");
        std::printf("[%s] criterion %s: %s [%.1f s]\n", tag, id.c_str(), o.summary.c_str(), elapsed);
        for (const auto &d : o.details)
            std::printf("        %s\n", d.c_str());
        std::fflush(stdout);
        if (!o.pass && !known)
            ++unexpected;
    }
    std::printf("%s\n", unexpected ? "acceptance: unexpected failures" : "acceptance: no unexpected failures");
    return unexpected ? EXIT_FAILURE : EXIT_SUCCESS;
}
