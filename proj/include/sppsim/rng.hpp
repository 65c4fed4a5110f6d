// Copyright 2026 The sppsim Authors
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

#ifndef SPPSIM_RNG_HPP
#define SPPSIM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace sppsim {

// SplitMix64 finalizer.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Keyed counter-based draw: the value depends only on (seed, k0..k3), never on
// call order, so independent streams can be evaluated in any parallel schedule
// with bit-identical results.
inline uint64_t counter_u64(uint64_t seed, uint64_t k0, uint64_t k1 = 0, uint64_t k2 = 0,
                            uint64_t k3 = 0) {
    uint64_t h = mix64(seed ^ 0x853c49e6748fea9bULL);
    h = mix64(h ^ mix64(k0 ^ 0xd1b54a32d192ed03ULL));
    h = mix64(h ^ mix64(k1 ^ 0x8cb92ba72f3d8dd7ULL));
    h = mix64(h ^ mix64(k2 ^ 0xaef17502108ef2d9ULL));
    h = mix64(h ^ mix64(k3 ^ 0x94d049bb133111ebULL));
    return h;
}

// Uniform double in [0, 1) from a keyed counter.
inline double counter_unit(uint64_t seed, uint64_t k0, uint64_t k1 = 0, uint64_t k2 = 0,
                           uint64_t k3 = 0) {
    return static_cast<double>(counter_u64(seed, k0, k1, k2, k3) >> 11) * 0x1.0p-53;
}

// Sequential generator (xoshiro256**), seeded through SplitMix64. Used where a
// variable number of draws is needed within one logical stream.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t z = seed;
        for (int i = 0; i < 4; i++) {
            z += 0x9e3779b97f4a7c15ULL;
            s_[i] = mix64(z);
        }
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) {
            s_[0] = 1;
        }
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    uint64_t next_below(uint64_t n) {
        // Rejection-free for our purposes; modulo bias is < 2^-40 for n < 2^24.
        return next_u64() % n;
    }

    // Standard normal via Box-Muller.
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_unit();
        double u2 = next_unit();
        while (u1 <= 0.0) {
            u1 = next_unit();
        }
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

  private:
    static uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    uint64_t s_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace sppsim

#endif
