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

#include <doctest.h>

#include <atomic>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "xlmimo/engine.hpp"
#include "xlmimo/errors.hpp"

using namespace xlmimo;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void require_identical(const AggregateResult &a, const AggregateResult &b)
{
    REQUIRE(a.value == b.value);
    REQUIRE(a.scheme == b.scheme);
    REQUIRE(a.omitted == b.omitted);
    REQUIRE(a.skipped == b.skipped);
    for (auto f : {&AggregateResult::se_ul, &AggregateResult::se_dl, &AggregateResult::se_total,
                   &AggregateResult::throughput, &AggregateResult::ee, &AggregateResult::p_total,
                   &AggregateResult::flops_per_second, &AggregateResult::n_act})
    {
        REQUIRE(same_bits((a.*f).mean, (b.*f).mean));
        REQUIRE(same_bits((a.*f).std_error, (b.*f).std_error));
    }
    REQUIRE(same_bits(a.power_w.s_ul, b.power_w.s_ul));
    REQUIRE(same_bits(a.power_w.i_dl, b.power_w.i_dl));
}

} // namespace

TEST_CASE("realizations are deterministic")
{
    const SystemConfig cfg;
    for (std::uint64_t index : {0ull, 7ull, 123456789ull})
    {
        const RealizationOutcome a = run_realization(cfg, 5, Scheme::zf, true, index);
        const RealizationOutcome b = run_realization(cfg, 5, Scheme::zf, true, index);
        CHECK(a.metrics.sinr_ul == b.metrics.sinr_ul);
        CHECK(a.metrics.sinr_dl == b.metrics.sinr_dl);
        CHECK(same_bits(a.power.ee, b.power.ee));
        CHECK(a.n_act == b.n_act);
    }
    const RealizationOutcome a = run_realization(cfg, 5, Scheme::mr, true, 0);
    const RealizationOutcome b = run_realization(cfg, 5, Scheme::mr, true, 1);
    CHECK(a.metrics.sinr_ul != b.metrics.sinr_ul);
}

TEST_CASE("stages draw from separate streams")
{
    SystemConfig cfg;
    const RealizationState a = prepare_realization(cfg, 3);
    cfg.sigma2_ul_dbm = -90.0;
    const RealizationState b = prepare_realization(cfg, 3);
    CHECK(a.channel.H == b.channel.H);
    CHECK(a.channel.layout.distances == b.channel.layout.distances);
    CHECK(a.estimate.H_hat != b.estimate.H_hat);

    cfg.seed = 2;
    const RealizationState c = prepare_realization(cfg, 3);
    CHECK(a.channel.H != c.channel.H);
}

TEST_CASE("full-array processing equals selecting every antenna")
{
    const SystemConfig cfg;
    const FrameStructure frame = derive_frame(cfg);
    const RealizationState s = prepare_realization(cfg, 11);
    for (Scheme scheme : {Scheme::mr, Scheme::zf})
    {
        const RealizationOutcome all = evaluate_point(s, cfg, frame, cfg.M, scheme, true);
        const RealizationOutcome none = evaluate_point(s, cfg, frame, cfg.M, scheme, false);
        CHECK(all.n_act == cfg.M);
        CHECK(none.n_act == cfg.M);
        CHECK(all.metrics.se_total == doctest::Approx(none.metrics.se_total).epsilon(1e-10));
        CHECK(all.complexity.c_tsp - all.complexity.c_theta ==
              doctest::Approx(none.complexity.c_tsp).epsilon(1e-14));
        CHECK(none.complexity.c_theta == 0.0);
    }
}

TEST_CASE("degenerate realizations are skipped, infeasible requests throw")
{
    const SystemConfig cfg;
    const FrameStructure frame = derive_frame(cfg);
    RealizationState s = prepare_realization(cfg, 0);
    s.estimate.H_hat.col(1).setZero();
    s.ranking = rank_antennas(s.estimate.H_hat);
    const RealizationOutcome o = evaluate_point(s, cfg, frame, 3, Scheme::mr, true);
    CHECK(o.skipped);
    CHECK(o.metrics.skipped);
    CHECK(!o.skip_reason.empty());

    const RealizationOutcome z = evaluate_point(s, cfg, frame, 10, Scheme::zf, true);
    CHECK(z.skipped);

    CHECK_THROWS_AS(evaluate_point(s, cfg, frame, 3, Scheme::zf, true), ZfInfeasibleError);
    CHECK_THROWS_AS(evaluate_point(s, cfg, frame, 101, Scheme::mr, true), InfeasibleError);
}

TEST_CASE("pairwise_sum")
{
    CHECK(pairwise_sum({}) == 0.0);
    std::vector<double> x(1000);
    for (int i = 0; i < 1000; ++i)
        x[i] = i + 1;
    CHECK(pairwise_sum(x) == 500500.0);
    const std::vector<double> tenth(1 << 20, 0.1);
    CHECK(std::abs(pairwise_sum(tenth) - 104857.6) < 1e-9);
}

TEST_CASE("parallel_for")
{
    for (unsigned workers : {1u, 2u, 5u})
    {
        std::vector<std::atomic<int>> hits(100);
        parallel_for(100, workers, [&](std::size_t i) { ++hits[i]; });
        for (auto &h : hits)
            REQUIRE(h.load() == 1);
    }
    CHECK_THROWS_AS(parallel_for(50, 3,
                                 [](std::size_t i) {
                                     if (i == 17)
                                         throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("grids")
{
    CHECK(full_grid(3) == std::vector<int>{1, 2, 3});
    const std::vector<int> c = coarse_grid(30);
    CHECK(c == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 20, 24, 28});
    CHECK(coarse_grid(5) == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("sweep spec validation")
{
    const SystemConfig cfg;
    SweepSpec s;
    CHECK_THROWS_AS(s.validate(cfg), InfeasibleError);
    s.values = {1, 101};
    CHECK_THROWS_AS(s.validate(cfg), InfeasibleError);
    s.values = {3, 2};
    CHECK_THROWS_AS(s.validate(cfg), InfeasibleError);
    s.values = {0, 2};
    CHECK_THROWS_AS(s.validate(cfg), InfeasibleError);
    s.values = {1, 100};
    CHECK_NOTHROW(s.validate(cfg));
    s.schemes.clear();
    CHECK_THROWS_AS(s.validate(cfg), InfeasibleError);
    s.schemes = {Scheme::mr};
    s.realizations = 0;
    CHECK_THROWS_AS(s.validate(cfg), InfeasibleError);
}

TEST_CASE("N sweeps")
{
    SystemConfig cfg;
    SweepSpec spec;
    spec.values = {1, 2, 3, 4, 5, 40};
    spec.schemes = {Scheme::mr, Scheme::zf};
    spec.realizations = 24;
    spec.seed = 9;

    EngineOptions one;
    one.threads = 1;
    const auto a = run_sweep(cfg, spec, one);
    REQUIRE(a.size() == 12u);

    SUBCASE("independent of the worker count")
    {
        EngineOptions many;
        many.threads = 4;
        const auto b = run_sweep(cfg, spec, many);
        REQUIRE(b.size() == a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            require_identical(a[i], b[i]);
    }

    SUBCASE("ZF points below K are omitted")
    {
        for (const auto &r : a)
        {
            const bool expect = r.scheme == Scheme::zf && r.value < cfg.K;
            CHECK(r.omitted == expect);
            if (expect)
                CHECK(r.omit_reason.find("zf-infeasible") != std::string::npos);
        }
    }

    SUBCASE("means equal the average over run_realization")
    {
        cfg.seed = spec.seed;
        for (const auto &r : a)
        {
            if (r.omitted)
                continue;
            std::vector<double> ee, se, nact;
            for (int i = 0; i < spec.realizations; ++i)
            {
                const RealizationOutcome o = run_realization(cfg, r.value, r.scheme, true, i);
                if (o.skipped)
                    continue;
                ee.push_back(o.power.ee);
                se.push_back(o.metrics.se_total);
                nact.push_back(o.n_act);
            }
            REQUIRE(r.used() == static_cast<int>(ee.size()));
            CHECK(r.ee.mean == doctest::Approx(oracle::mean(ee)).epsilon(1e-12));
            CHECK(r.se_total.mean == doctest::Approx(oracle::mean(se)).epsilon(1e-12));
            CHECK(r.n_act.mean == doctest::Approx(oracle::mean(nact)).epsilon(1e-12));
            CHECK(r.ee.std_error ==
                  doctest::Approx(std::sqrt(oracle::variance(ee) / ee.size())).epsilon(1e-9));
            CHECK(r.throughput.mean == doctest::Approx(cfg.B * r.se_total.mean).epsilon(1e-12));
        }
    }

    SUBCASE("progress is reported")
    {
        std::atomic<int> calls{0};
        EngineOptions opts;
        opts.threads = 2;
        opts.progress = [&](std::string_view) { ++calls; };
        run_sweep(cfg, spec, opts);
        CHECK(calls.load() > 0);
    }

    SUBCASE("without selection every N repeats one evaluation")
    {
        spec.as_enabled = false;
        const auto c = run_sweep(cfg, spec, one);
        REQUIRE(c.size() == 12u);
        for (const auto &r : c)
        {
            CHECK(!r.omitted);
            CHECK(r.N == cfg.M);
            CHECK(r.n_act.mean == cfg.M);
            const auto &first = r.scheme == Scheme::mr ? c.front() : c[6];
            CHECK(same_bits(r.ee.mean, first.ee.mean));
        }
    }
}

TEST_CASE("K sweeps")
{
    const SystemConfig cfg;
    SweepSpec spec;
    spec.variable = SweepVariable::K;
    spec.values = {2, 4, 8};
    spec.schemes = {Scheme::mr, Scheme::zf};
    spec.fixed_n = 4;
    spec.realizations = 10;
    const auto r = run_sweep(cfg, spec);
    REQUIRE(r.size() == 6u);
    CHECK(r[0].K == 2);
    CHECK(r[2].K == 8);
    CHECK(!r[4].omitted);
    CHECK(r[5].omitted); // ZF with N = 4 < K = 8
    for (const auto &x : r)
        CHECK(x.variable == SweepVariable::K);

    SystemConfig k8 = cfg;
    k8.K = 8;
    k8.seed = spec.seed;
    const RealizationOutcome o = run_realization(k8, 4, Scheme::mr, true, 0);
    std::vector<double> ee{o.power.ee};
    for (int i = 1; i < spec.realizations; ++i)
        ee.push_back(run_realization(k8, 4, Scheme::mr, true, i).power.ee);
    CHECK(r[2].ee.mean == doctest::Approx(oracle::mean(ee)).epsilon(1e-12));
}

TEST_CASE("optimal N")
{
    SystemConfig cfg;
    cfg.realizations = 100;
    const OptimalN mr = find_optimal_n(cfg, Scheme::mr, 4, {1, 2, 50, 100});
    CHECK(mr.curve.size() == 4u);
    double best = -1.0;
    int arg = 0;
    for (const auto &p : mr.curve)
        if (p.ee.mean > best)
        {
            best = p.ee.mean;
            arg = p.value;
        }
    CHECK(mr.n_star == arg);
    CHECK(mr.ee_star == best);
    // Few antennas win for MR with 4 users.
    CHECK(mr.n_star <= 2);

    // Candidates below K are dropped for ZF; none left is an error.
    const OptimalN zf = find_optimal_n(cfg, Scheme::zf, 4, {2, 3, 6});
    CHECK(zf.curve.size() == 1u);
    CHECK(zf.n_star == 6);
    CHECK_THROWS_AS(find_optimal_n(cfg, Scheme::zf, 4, {1, 2, 3}), InfeasibleError);
    CHECK_THROWS_AS(find_optimal_n(cfg, Scheme::mr, 4, {}), InfeasibleError);
}

TEST_CASE("few antennas beat the full array for MR with four users")
{
    SystemConfig cfg;
    std::vector<double> diff;
    for (int i = 0; i < 200; ++i)
    {
        const RealizationState s = prepare_realization(cfg, i);
        const FrameStructure f = derive_frame(cfg);
        diff.push_back(evaluate_point(s, cfg, f, 1, Scheme::mr, true).power.ee -
                       evaluate_point(s, cfg, f, 100, Scheme::mr, true).power.ee);
    }
    const double se = std::sqrt(oracle::variance(diff) / diff.size());
    CHECK(oracle::mean(diff) > 3.0 * se);
}
