// Copyright 2026 The rqcm Authors
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

#include <cstdint>
#include <limits>

namespace rqcm {

/// Counter-based random stream.
///
/// A stream is keyed by (seed, index, stream_id); its state is the SplitMix64
/// finalizer applied to the key, and it then advances as a SplitMix64
/// generator. Trial i of an experiment always uses the stream keyed by
/// (seed, i, id), so results do not depend on how trials are scheduled.
class Stream {
  public:
    using result_type = std::uint64_t;

    Stream(std::uint64_t seed, std::uint64_t index, std::uint64_t stream_id = 0)
        : state_(mix(mix(mix(seed) ^ index) + stream_id * kGolden)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += kGolden;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
            if (static_cast<std::uint64_t>(m) >= threshold) {
                return static_cast<std::uint64_t>(m >> 64);
            }
        }
    }

    bool coin() { return ((*this)() >> 63) != 0; }

  private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

/// Well-known stream ids, so that two samplers never share a stream.
namespace streams {
inline constexpr std::uint64_t kTuples = 1;
inline constexpr std::uint64_t kPhaseWalk = 2;
inline constexpr std::uint64_t kIdealWalk = 3;
inline constexpr std::uint64_t kF2Walk = 4;
inline constexpr std::uint64_t kCircuit = 5;
inline constexpr std::uint64_t kHaarState = 6;
}  // namespace streams

}  // namespace rqcm
