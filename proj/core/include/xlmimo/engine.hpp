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

#ifndef XLMIMO_ENGINE_HPP
#define XLMIMO_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xlmimo/channel.hpp"
#include "xlmimo/config.hpp"
#include "xlmimo/cost_model.hpp"
#include "xlmimo/estimation.hpp"
#include "xlmimo/metrics.hpp"
#include "xlmimo/selection.hpp"

namespace xlmimo {

/// Everything drawn for one (seed, realization index): geometry, visibility,
/// fading, pilot noise, and the HRNP ranking of the resulting estimate.
/// Independent of N and of the processing scheme.
struct RealizationState
{
    ChannelRealization channel;
    ChannelEstimate estimate;
    AntennaRanking ranking;
};

RealizationState prepare_realization(const SystemConfig &cfg, std::uint64_t index);

struct RealizationOutcome
{
    RealizationMetrics metrics;
    PowerReport power;
    ComplexityReport complexity;
    int n_act = 0;
    bool skipped = false;
    std::string skip_reason;
};

/// Selection, metrics and cost ledgers of one prepared realization.
/// A singular ZF Gram matrix or zero combiner marks the outcome skipped;
/// an infeasible request (N out of range, ZF with N < K) throws.
RealizationOutcome evaluate_point(const RealizationState &state, const SystemConfig &cfg,
                                  const FrameStructure &frame, int N, Scheme scheme,
                                  bool as_enabled);

/// prepare_realization + evaluate_point. Deterministic in (cfg.seed, index).
RealizationOutcome run_realization(const SystemConfig &cfg, int N, Scheme scheme, bool as_enabled,
                                   std::uint64_t index);

enum class SweepVariable
{
    N,
    K,
};

std::string_view to_string(SweepVariable v) noexcept;

struct SweepSpec
{
    SweepVariable variable = SweepVariable::N;
    std::vector<int> values;
    std::vector<Scheme> schemes{Scheme::mr};
    bool as_enabled = true;
    int fixed_n = 1; ///< N used at every point of a K sweep
    int realizations = 1000;
    std::uint64_t seed = 1;

    /// Throws InfeasibleError (values empty, not strictly increasing, or
    /// outside [1, M] for N sweeps).
    void validate(const SystemConfig &cfg) const;
};

struct MeanStat
{
    double mean = 0.0;
    double std_error = 0.0;
};

struct AggregateResult
{
    SweepVariable variable = SweepVariable::N;
    int value = 0;
    Scheme scheme = Scheme::mr;
    bool as_enabled = true;
    int K = 0;
    int N = 0;
    int realizations = 0;
    int skipped = 0;
    bool omitted = false;
    std::string omit_reason;

    MeanStat se_ul, se_dl, se_total, throughput, ee, p_total, flops_per_second, n_act;
    ReceivedPower power_w; ///< means of the per-realization powers, watts

    int used() const noexcept { return realizations - skipped; }
    ReceivedPower power_dbm() const { return to_dbm(power_w); }
};

struct EngineOptions
{
    unsigned threads = 0; ///< 0: default_worker_count()
    std::function<void(std::string_view)> progress;
};

/// Hardware concurrency, capped by the XLMIMO_THREADS environment variable.
unsigned default_worker_count();

/// Runs body(i) for i in [0, count) on `workers` threads; rethrows the first
/// exception after all workers stop.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)> &body);

/// Pairwise (cascade) sum in index order; identical for any worker count.
double pairwise_sum(std::span<const double> values);

/// One result per (scheme, value). ZF points with N < K are returned with
/// `omitted` set. Without antenna selection an N sweep evaluates once per
/// scheme and repeats the result for every N.
std::vector<AggregateResult> run_sweep(const SystemConfig &cfg, const SweepSpec &spec,
                                       const EngineOptions &options = {});

/// Every integer 1..M.
std::vector<int> full_grid(int M);

/// {1..10} and then steps of 4 from 12 up to M.
std::vector<int> coarse_grid(int M);

struct OptimalN
{
    int K = 0;
    Scheme scheme = Scheme::mr;
    int n_star = 0;
    double ee_star = 0.0;
    std::vector<AggregateResult> curve;
};

/// Argmax of the mean EE over the feasible candidates (ties to smaller N),
/// using cfg.realizations and cfg.seed. Throws InfeasibleError if no
/// candidate is feasible.
OptimalN find_optimal_n(const SystemConfig &cfg, Scheme scheme, int K,
                        const std::vector<int> &candidates, const EngineOptions &options = {});

} // namespace xlmimo

#endif
