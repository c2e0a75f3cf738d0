// SPDX-License-Identifier: Apache-2.0
//
// cobeam -- simulation and optimization toolkit for distributed coherent
// group communications
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

#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace cobeam {

/// SplitMix64 finalizer, used to decorrelate nearby seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a hash of a stream name.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Split function for named substreams. Every consumer of randomness draws
/// from its own (seed, purpose) stream, so adding one consumer never shifts
/// the draws seen by another. This is what makes protocol comparisons run on
/// identical geometry.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::string_view stream) noexcept {
    return splitmix64(splitmix64(seed) ^ fnv1a64(stream));
}

/// Seeded generator with explicit output mappings. The engine (mt19937_64)
/// and the mappings below are fully specified, so sequences are identical
/// across platforms and across runs.
class Rng {
  public:
    explicit Rng(std::uint64_t key) : eng_(key) {}
    Rng(std::uint64_t seed, std::string_view stream) : eng_(stream_key(seed, stream)) {}

    std::uint64_t raw() { return eng_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unbiased integer in [0, n) via masked rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        if (n == 1) return 0;
        const std::uint64_t mask = ~0ULL >> std::countl_zero(n - 1);
        std::uint64_t x;
        do {
            x = eng_() & mask;
        } while (x >= n);
        return x;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace cobeam
