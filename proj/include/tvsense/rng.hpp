// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>

namespace tvsense {

// splitmix64. Fixed constants so a corpus generated from a seed is
// bit-identical on every platform; statistical quality is secondary here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n), n > 0.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // Independent child stream, e.g. one per generated scene.
    Rng fork() { return Rng(next_u64()); }

private:
    std::uint64_t state_;
};

}  // namespace tvsense
