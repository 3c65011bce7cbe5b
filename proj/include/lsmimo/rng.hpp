#ifndef LSMIMO_RNG_HPP
#define LSMIMO_RNG_HPP

#include <cstdint>

#include "lsmimo/types.hpp"

namespace lsmimo {

uint64_t mix64(uint64_t x);

/// Splittable pseudo-random stream (splitmix64 core).
///
/// Every Monte Carlo trial derives its own stream from (seed, tag, a, b),
/// so results do not depend on how trials are scheduled across workers.
class Rng {
public:
    Rng() = default;
    explicit Rng(uint64_t state) : state_(state) {}

    static Rng from_seed(uint64_t seed);
    static Rng stream(uint64_t seed, uint64_t tag, uint64_t a = 0, uint64_t b = 0);

    uint64_t next_u64();

    /// Uniform in [0, 1).
    double next_double();

    /// Standard normal via Box-Muller; second value of each pair is cached.
    double next_gaussian();

    /// Circularly symmetric complex Gaussian with the given per-dimension variance.
    cplx next_cn(double var_per_dim);

    /// One uniform bit.
    uint8_t next_bit() { return static_cast<uint8_t>(next_u64() >> 63); }

    BitVec next_bits(size_t n);

    /// Uniform integer in [0, n).
    uint64_t next_below(uint64_t n);

private:
    uint64_t state_ = 0x853C49E6748FEA9BULL;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace lsmimo

#endif
