#pragma once

#include <cstdint>
#include <random>

namespace metriclust {

/// SplitMix64 output function.
std::uint64_t mix64(std::uint64_t x);

/// Child seed for an independent stream (restart index, scree k, ...).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator with a fixed algorithm identity: std::mt19937_64 for raw
/// bits (its output sequence is pinned by the standard), and hand-written
/// uniform, bounded-integer and Box-Muller normal transforms so that a seed
/// yields the same stream with any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer on [0, bound) without modulo bias. bound must be > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Standard normal variate.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace metriclust
