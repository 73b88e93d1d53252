// Copyright 2026 The qgenbound Authors
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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

/**
 * @file
 * Seed derivation and platform-stable sampling.
 *
 * std::mt19937_64 has a fully specified output sequence, but the standard
 * distributions do not, so uniform/normal/shuffle draws are mapped here by
 * hand. Every stream is keyed by (base seed, stream tag, index) so adding a
 * new consumer never perturbs existing ones.
 */

namespace qgb::rng {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-style key: hashes the tuple into one 64-bit seed.
constexpr std::uint64_t derive(std::uint64_t base, std::uint64_t a,
                               std::uint64_t b = 0) noexcept {
    return splitmix64(splitmix64(splitmix64(base) ^ a) ^ (b * 0xD1B54A32D192ED03ULL));
}

// Stream tags.
inline constexpr std::uint64_t kInitStream = 0x1001;
inline constexpr std::uint64_t kShuffleStream = 0x1002;
inline constexpr std::uint64_t kDatasetStream = 0x1003;
inline constexpr std::uint64_t kLabelStream = 0x1004;
inline constexpr std::uint64_t kSigmaStream = 0x1005;
inline constexpr std::uint64_t kRestartStream = 0x1006;

class Generator {
  public:
    explicit Generator(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller; the spare value is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    /// +1 or -1 with equal probability.
    double sign() { return (engine_() >> 63) != 0U ? 1.0 : -1.0; }

    template <class T> void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline std::vector<double> standard_normal(std::size_t n, std::uint64_t seed) {
    Generator gen(seed);
    std::vector<double> out(n);
    for (auto &v : out) {
        v = gen.normal();
    }
    return out;
}

} // namespace qgb::rng
