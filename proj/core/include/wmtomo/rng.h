// Copyright 2026 The wmtomo Authors
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

#ifndef WMTOMO_RNG_H
#define WMTOMO_RNG_H

#include <array>
#include <complex>
#include <cstdint>

namespace wmtomo {

/// splitmix64 output function: a bijective 64-bit mixer.
constexpr uint64_t splitmix64_mix(uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the independent stream used by sub-task `index` of a run seeded
/// with `seed`: splitmix64_mix(seed + 0x9E3779B97F4A7C15 * (index + 1)).
constexpr uint64_t derive_seed(uint64_t seed, uint64_t index) noexcept {
    return splitmix64_mix(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

/// xoshiro256** 1.0 (Blackman & Vigna). The four state words are the first
/// four outputs of a splitmix64 sequence started at `seed`.
///
/// This is the only random source in the library. Every consumer takes the
/// generator by reference, so the stream position is explicit in the call
/// graph and runs are reproducible bit-for-bit.
class Rng {
   public:
    explicit Rng(uint64_t seed) noexcept;

    uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 bits: (next_u64() >> 11) * 2^-53.
    double uniform() noexcept;

    /// Standard normal by Box-Muller. Each call consumes two uniforms u1, u2
    /// and returns r cos(2 pi u2) with r = sqrt(-2 ln(1 - u1)); the sine
    /// partner is returned by the next call (no extra draw).
    double normal() noexcept;

    /// Complex variate whose real and imaginary parts are independent
    /// standard normals (in that order).
    std::complex<double> complex_normal() noexcept;

   private:
    std::array<uint64_t, 4> s_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace wmtomo

#endif
