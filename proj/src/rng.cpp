#include "lsmimo/rng.hpp"

#include <cmath>

namespace lsmimo {

// Finalizer from splitmix64.
uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng Rng::from_seed(uint64_t seed) {
    return Rng(mix64(seed));
}

Rng Rng::stream(uint64_t seed, uint64_t tag, uint64_t a, uint64_t b) {
    uint64_t s = mix64(b);
    s = mix64(a ^ s);
    s = mix64(tag ^ s);
    s = mix64(seed ^ s);
    return Rng(s);
}

uint64_t Rng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log() finite
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

cplx Rng::next_cn(double var_per_dim) {
    const double s = std::sqrt(var_per_dim);
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {s * re, s * im};
}

BitVec Rng::next_bits(size_t n) {
    BitVec out(n);
    for (size_t i = 0; i < n; ++i)
        out[i] = next_bit();
    return out;
}

uint64_t Rng::next_below(uint64_t n) {
    // Rejection-free modulo is fine here; n is tiny compared to 2^64.
    return n ? next_u64() % n : 0;
}

}  // namespace lsmimo
