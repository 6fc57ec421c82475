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

#ifndef XLMIMO_RANDOM_HPP
#define XLMIMO_RANDOM_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace xlmimo {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Independent draws used by one realization, one stream per stage so that
/// e.g. changing the noise level leaves geometry and fading untouched.
enum class Stage : std::uint32_t
{
    layout = 1,
    visibility = 2,
    fading = 3,
    pilot_noise = 4,
    test = 0xffff,
};

/// A deterministic substream f(seed, realization_index, stage).
///
/// Satisfies UniformRandomBitGenerator (32-bit results). The block counter
/// occupies the first counter word, so a stream yields 2^34 values before
/// wrapping, far beyond one realization's needs.
class RandomStream
{
public:
    using result_type = std::uint32_t;

    RandomStream(std::uint64_t seed, std::uint64_t index, Stage stage) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) noexcept;

    /// Uniform integer on the closed range [lo, hi]; unbiased (rejection).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;

    /// Circularly-symmetric complex Gaussian with E|z|^2 = 1.
    std::complex<double> complex_normal() noexcept;

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> block_{};
    unsigned used_ = 4;
};

} // namespace xlmimo

#endif
