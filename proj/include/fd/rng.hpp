// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace fd {

/// Small splittable generator (splitmix64). Streams derived from the same
/// (seed, a, b) triple are identical regardless of scheduling, which keeps
/// randomized components reproducible across thread counts.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        Rng mixer(seed);
        mixer.state_ ^= mix(a + 0x9e3779b97f4a7c15ull);
        mixer.state_ ^= mix(b + 0xbf58476d1ce4e5b9ull);
        return mixer;
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    /// Uniform in [0, n); n must be > 0.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace fd
