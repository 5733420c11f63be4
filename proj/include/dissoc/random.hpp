// Copyright 2026 The dissoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstdint>
#include <limits>

namespace dissoc {

/// splitmix64, used to expand a single seed into generator state.
inline std::uint64_t splitmix64(std::uint64_t &state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// xoshiro256** 1.0.  The same seed yields the same stream on every platform.
class Xoshiro256
{
    std::uint64_t s_[4];

  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed)
    {
        for (auto &w : s_) w = splitmix64(seed);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = std::rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n), by rejection.  `n` must be positive.
    std::uint64_t uniform_below(std::uint64_t n)
    {
        const std::uint64_t limit = max() - max() % n;
        for (;;) {
            std::uint64_t x = (*this)();
            if (x < limit) return x % n;
        }
    }
};

/// Seed of trial `index` derived from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t state = master ^ (0xd1b54a32d192ed03ull * (index + 1));
    return splitmix64(state);
}

}
