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

#include "xlmimo/random.hpp"

#include <cmath>
#include <numbers>

namespace xlmimo {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) noexcept
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index, Stage stage) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      counter_{0u, static_cast<std::uint32_t>(stage), static_cast<std::uint32_t>(index),
               static_cast<std::uint32_t>(index >> 32)}
{
}

void RandomStream::refill() noexcept
{
    block_ = philox4x32(counter_, key_);
    ++counter_[0];
    used_ = 0;
}

RandomStream::result_type RandomStream::operator()() noexcept
{
    if (used_ == 4)
        refill();
    return block_[used_++];
}

std::uint64_t RandomStream::next_u64() noexcept
{
    const std::uint64_t hi = (*this)();
    const std::uint64_t lo = (*this)();
    return (hi << 32) | lo;
}

double RandomStream::uniform() noexcept
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) noexcept
{
    if (hi <= lo)
        return lo;
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1u;
    if (range == 0) // full 64-bit span
        return static_cast<std::int64_t>(next_u64());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do
        x = next_u64();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % range);
}

std::complex<double> RandomStream::complex_normal() noexcept
{
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double r = std::sqrt(-std::log(1.0 - uniform()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(phi), r * std::sin(phi)};
}

} // namespace xlmimo
