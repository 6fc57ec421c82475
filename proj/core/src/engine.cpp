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

#include "xlmimo/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "xlmimo/errors.hpp"

namespace xlmimo {

RealizationState prepare_realization(const SystemConfig &cfg, std::uint64_t index)
{
    RandomStream layout_rng(cfg.seed, index, Stage::layout);
    RandomStream vr_rng(cfg.seed, index, Stage::visibility);
    RandomStream fading_rng(cfg.seed, index, Stage::fading);
    RandomStream noise_rng(cfg.seed, index, Stage::pilot_noise);

    RealizationState s;
    const UserLayout layout = place_users(cfg, layout_rng);
    const VisibilityMask mask = draw_visibility(cfg, vr_rng);
    s.channel = realize_channel(layout, mask, cfg, fading_rng);
    s.estimate = simulate_pilot_phase(s.channel, cfg, noise_rng);
    s.ranking = rank_antennas(s.estimate.H_hat);
    return s;
}

RealizationOutcome evaluate_point(const RealizationState &state, const SystemConfig &cfg,
                                  const FrameStructure &frame, int N, Scheme scheme,
                                  bool as_enabled)
{
    const CMatrix &H_hat = state.estimate.H_hat;
    RealizationOutcome out;
    try
    {
        const SelectionResult sel = as_enabled
                                        ? build_selection(H_hat, state.ranking, N, scheme)
                                        : full_array_processing(H_hat, scheme);
        out.n_act = sel.n_act();
        out.metrics = evaluate_link(state.channel.H, sel, cfg, frame);
    }
    catch (const SingularChannelError &e)
    {
        out.skipped = true;
        out.skip_reason = e.what();
    }
    catch (const ZeroCombinerError &e)
    {
        out.skipped = true;
        out.skip_reason = e.what();
    }
    out.metrics.skipped = out.skipped;
    out.complexity = flops_total(cfg.M, N, cfg.K, frame, scheme, as_enabled, cfg.B);
    if (!out.skipped)
        out.power = power_report(out.complexity, out.n_act, out.metrics.se_total, frame, cfg);
    return out;
}

RealizationOutcome run_realization(const SystemConfig &cfg, int N, Scheme scheme, bool as_enabled,
                                   std::uint64_t index)
{
    const FrameStructure frame = derive_frame(cfg);
    return evaluate_point(prepare_realization(cfg, index), cfg, frame, N, scheme, as_enabled);
}

std::string_view to_string(SweepVariable v) noexcept { return v == SweepVariable::N ? "N" : "K"; }

void SweepSpec::validate(const SystemConfig &cfg) const
{
    if (values.empty())
        throw InfeasibleError("sweep has no values");
    if (schemes.empty())
        throw InfeasibleError("sweep has no processing scheme");
    if (realizations < 1)
        throw InfeasibleError("sweep needs at least one realization");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1])
            throw InfeasibleError("sweep values must be strictly increasing");
    const int hi = variable == SweepVariable::N ? cfg.M : std::numeric_limits<int>::max();
    if (values.front() < 1 || values.back() > hi)
        throw InfeasibleError("sweep values must lie in [1, " + std::to_string(hi) + "]");
    if (variable == SweepVariable::K && as_enabled && (fixed_n < 1 || fixed_n > cfg.M))
        throw InfeasibleError("N=" + std::to_string(fixed_n) + " outside [1, " +
                              std::to_string(cfg.M) + "]");
}

unsigned default_worker_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("XLMIMO_THREADS"))
    {
        char *end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0)
            n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)> &body)
{
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
        {
            pool.emplace_back([&] {
                for (;;)
                {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= count || failed.load())
                        return;
                    try
                    {
                        body(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                        failed = true;
                    }
                }
            });
        }
    }
    if (error)
        std::rethrow_exception(error);
}

double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 8)
    {
        double s = 0.0;
        for (double x : v)
            s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

namespace {

// Per-realization values that enter the averages.
struct Sample
{
    double se_ul = 0.0;
    double se_dl = 0.0;
    double se_total = 0.0;
    double throughput = 0.0;
    double ee = 0.0;
    double p_total = 0.0;
    double flops_per_second = 0.0;
    double n_act = 0.0;
    ReceivedPower power;
    bool skipped = false;
};

Sample to_sample(const RealizationOutcome &o, double bandwidth)
{
    Sample s;
    s.skipped = o.skipped;
    s.flops_per_second = o.complexity.flops_per_second;
    if (o.skipped)
        return s;
    s.se_ul = o.metrics.se_ul;
    s.se_dl = o.metrics.se_dl;
    s.se_total = o.metrics.se_total;
    s.throughput = bandwidth * o.metrics.se_total;
    s.ee = o.power.ee;
    s.p_total = o.power.p_total;
    s.n_act = o.n_act;
    s.power = o.metrics.power;
    return s;
}

MeanStat mean_stat(const std::vector<Sample> &samples, double Sample::*field)
{
    std::vector<double> x;
    x.reserve(samples.size());
    for (const auto &s : samples)
        if (!s.skipped)
            x.push_back(s.*field);
    MeanStat st;
    if (x.empty())
    {
        st.mean = std::numeric_limits<double>::quiet_NaN();
        st.std_error = std::numeric_limits<double>::quiet_NaN();
        return st;
    }
    const double n = static_cast<double>(x.size());
    st.mean = pairwise_sum(x) / n;
    if (x.size() > 1)
    {
        for (double &v : x)
            v = (v - st.mean) * (v - st.mean);
        st.std_error = std::sqrt(pairwise_sum(x) / (n - 1.0) / n);
    }
    return st;
}

double mean_power(const std::vector<Sample> &samples, double ReceivedPower::*field)
{
    std::vector<double> x;
    x.reserve(samples.size());
    for (const auto &s : samples)
        if (!s.skipped)
            x.push_back(s.power.*field);
    return x.empty() ? std::numeric_limits<double>::quiet_NaN()
                     : pairwise_sum(x) / static_cast<double>(x.size());
}

void reduce(AggregateResult &r, const std::vector<Sample> &samples)
{
    r.realizations = static_cast<int>(samples.size());
    r.skipped = static_cast<int>(std::count_if(samples.begin(), samples.end(),
                                               [](const Sample &s) { return s.skipped; }));
    r.se_ul = mean_stat(samples, &Sample::se_ul);
    r.se_dl = mean_stat(samples, &Sample::se_dl);
    r.se_total = mean_stat(samples, &Sample::se_total);
    r.throughput = mean_stat(samples, &Sample::throughput);
    r.ee = mean_stat(samples, &Sample::ee);
    r.p_total = mean_stat(samples, &Sample::p_total);
    r.n_act = mean_stat(samples, &Sample::n_act);
    // The ledger is deterministic; average it over all realizations.
    {
        std::vector<double> f;
        for (const auto &s : samples)
            f.push_back(s.flops_per_second);
        r.flops_per_second.mean = pairwise_sum(f) / static_cast<double>(f.size());
        r.flops_per_second.std_error = 0.0;
    }
    r.power_w.s_ul = mean_power(samples, &ReceivedPower::s_ul);
    r.power_w.i_ul = mean_power(samples, &ReceivedPower::i_ul);
    r.power_w.n_ul = mean_power(samples, &ReceivedPower::n_ul);
    r.power_w.s_dl = mean_power(samples, &ReceivedPower::s_dl);
    r.power_w.i_dl = mean_power(samples, &ReceivedPower::i_dl);
    r.power_w.n_dl = mean_power(samples, &ReceivedPower::n_dl);
}

class Progress
{
public:
    Progress(const EngineOptions &options, std::string label, std::size_t total)
        : options_(options), label_(std::move(label)), total_(total)
    {
    }

    void tick()
    {
        if (!options_.progress)
            return;
        const std::size_t done = ++done_;
        const std::size_t step = std::max<std::size_t>(1, total_ / 10);
        if (done % step == 0 || done == total_)
        {
            std::lock_guard lock(mutex_);
            options_.progress(label_ + ": " + std::to_string(done) + "/" + std::to_string(total_) +
                              " realizations");
        }
    }

private:
    const EngineOptions &options_;
    std::string label_;
    std::size_t total_;
    std::atomic<std::size_t> done_{0};
    std::mutex mutex_;
};

struct Point
{
    AggregateResult result;
    bool evaluate = false; // false: omitted, or a copy of another point
    int source = -1;       // index of the point whose samples to reuse
};

std::vector<AggregateResult> sweep_n(const SystemConfig &base, const SweepSpec &spec,
                                     const EngineOptions &options)
{
    SystemConfig cfg = base;
    cfg.realizations = spec.realizations;
    cfg.seed = spec.seed;
    const FrameStructure frame = derive_frame(cfg);

    std::vector<Point> points;
    for (Scheme scheme : spec.schemes)
    {
        int first_of_scheme = -1;
        for (int n : spec.values)
        {
            Point p;
            p.result.variable = SweepVariable::N;
            p.result.value = n;
            p.result.scheme = scheme;
            p.result.as_enabled = spec.as_enabled;
            p.result.K = cfg.K;
            p.result.N = spec.as_enabled ? n : cfg.M;
            const int effective_n = p.result.N;
            if (scheme == Scheme::zf && effective_n < cfg.K)
            {
                p.result.omitted = true;
                p.result.omit_reason = "zf-infeasible: N=" + std::to_string(effective_n) +
                                       " < K=" + std::to_string(cfg.K);
            }
            else if (!spec.as_enabled && first_of_scheme >= 0)
            {
                p.source = first_of_scheme;
            }
            else
            {
                p.evaluate = true;
                if (!spec.as_enabled)
                    first_of_scheme = static_cast<int>(points.size());
            }
            points.push_back(std::move(p));
        }
    }

    std::vector<int> active;
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
        if (points[i].evaluate)
            active.push_back(i);

    const auto R = static_cast<std::size_t>(spec.realizations);
    std::vector<std::vector<Sample>> samples(points.size());
    for (int i : active)
        samples[i].resize(R);

    Progress progress(options, "N sweep, K=" + std::to_string(cfg.K), R);
    const unsigned workers = options.threads ? options.threads : default_worker_count();
    parallel_for(R, workers, [&](std::size_t r) {
        const RealizationState state = prepare_realization(cfg, r);
        for (int i : active)
        {
            const auto &res = points[i].result;
            samples[i][r] = to_sample(
                evaluate_point(state, cfg, frame, res.N, res.scheme, res.as_enabled), cfg.B);
        }
        progress.tick();
    });

    std::vector<AggregateResult> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        AggregateResult r = points[i].result;
        if (points[i].evaluate)
            reduce(r, samples[i]);
        else if (points[i].source >= 0)
        {
            const int value = r.value;
            r = out[points[i].source];
            r.value = value;
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<AggregateResult> sweep_k(const SystemConfig &base, const SweepSpec &spec,
                                     const EngineOptions &options)
{
    std::vector<AggregateResult> out;
    const unsigned workers = options.threads ? options.threads : default_worker_count();
    for (Scheme scheme : spec.schemes)
    {
        for (int k : spec.values)
        {
            SystemConfig cfg = base;
            cfg.K = k;
            cfg.realizations = spec.realizations;
            cfg.seed = spec.seed;

            AggregateResult r;
            r.variable = SweepVariable::K;
            r.value = k;
            r.scheme = scheme;
            r.as_enabled = spec.as_enabled;
            r.K = k;
            r.N = spec.as_enabled ? spec.fixed_n : cfg.M;
            if (scheme == Scheme::zf && r.N < k)
            {
                r.omitted = true;
                r.omit_reason = "zf-infeasible: N=" + std::to_string(r.N) + " < K=" + std::to_string(k);
                out.push_back(std::move(r));
                continue;
            }
            cfg.validate();
            const FrameStructure frame = derive_frame(cfg);

            const auto R = static_cast<std::size_t>(spec.realizations);
            std::vector<Sample> samples(R);
            Progress progress(options, "K sweep, K=" + std::to_string(k), R);
            parallel_for(R, workers, [&](std::size_t i) {
                samples[i] = to_sample(evaluate_point(prepare_realization(cfg, i), cfg, frame, r.N,
                                                      r.scheme, r.as_enabled),
                                       cfg.B);
                progress.tick();
            });
            reduce(r, samples);
            out.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace

std::vector<AggregateResult> run_sweep(const SystemConfig &cfg, const SweepSpec &spec,
                                       const EngineOptions &options)
{
    spec.validate(cfg);
    return spec.variable == SweepVariable::N ? sweep_n(cfg, spec, options)
                                             : sweep_k(cfg, spec, options);
}

std::vector<int> full_grid(int M)
{
    std::vector<int> g(M);
    for (int i = 0; i < M; ++i)
        g[i] = i + 1;
    return g;
}

std::vector<int> coarse_grid(int M)
{
    std::vector<int> g;
    for (int n = 1; n <= std::min(M, 10); ++n)
        g.push_back(n);
    for (int n = 12; n <= M; n += 4)
        g.push_back(n);
    return g;
}

OptimalN find_optimal_n(const SystemConfig &base, Scheme scheme, int K,
                        const std::vector<int> &candidates, const EngineOptions &options)
{
    SystemConfig cfg = base;
    cfg.K = K;
    cfg.validate();

    SweepSpec spec;
    spec.variable = SweepVariable::N;
    spec.schemes = {scheme};
    spec.realizations = cfg.realizations;
    spec.seed = cfg.seed;
    for (int n : candidates)
        if (n >= 1 && n <= cfg.M && (scheme == Scheme::mr || n >= K))
            spec.values.push_back(n);
    std::sort(spec.values.begin(), spec.values.end());
    spec.values.erase(std::unique(spec.values.begin(), spec.values.end()), spec.values.end());
    if (spec.values.empty())
        throw InfeasibleError("no feasible N candidate for " + std::string(to_string(scheme)) +
                              " with K=" + std::to_string(K));

    OptimalN best;
    best.K = K;
    best.scheme = scheme;
    best.curve = run_sweep(cfg, spec, options);
    best.ee_star = -std::numeric_limits<double>::infinity();
    for (const auto &p : best.curve)
    {
        if (p.omitted || p.used() == 0)
            continue;
        if (p.ee.mean > best.ee_star)
        {
            best.ee_star = p.ee.mean;
            best.n_star = p.value;
        }
    }
    if (best.n_star == 0)
        throw InfeasibleError("every candidate N was skipped");
    return best;
}

} // namespace xlmimo
