// Copyright 2026 The twotime Authors
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

// Counter-based random streams.
//
// Splitting rule: the stream for (seed, counter) starts from
//     state0 = mix64(mix64(seed + G) + mix64(counter + G2))
// and the n-th draw (n >= 1) is mix64(state0 + n * G), where mix64 is the SplitMix64
// finalizer. Every attempt of a simulation owns the stream keyed by its index,
// so results do not depend on how attempts are split across workers.

#pragma once

#include <cstdint>
#include <limits>

namespace twotime {

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class CounterStream {
   public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    static constexpr std::uint64_t kStreamGolden = 0xd1b54a32d192ed03ULL;

    constexpr CounterStream(std::uint64_t seed, std::uint64_t counter) noexcept
        : state_(mix64(mix64(seed + kGolden) + mix64(counter + kStreamGolden))) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

   private:
    std::uint64_t state_;
};

}  // namespace twotime
