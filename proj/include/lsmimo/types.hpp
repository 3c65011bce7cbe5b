#ifndef LSMIMO_TYPES_HPP
#define LSMIMO_TYPES_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace lsmimo {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// One element per bit, values 0/1.
using BitVec = std::vector<uint8_t>;

// Exact code rate, e.g. {1,3} for rate 1/3.
struct Rate {
    int num = 1;
    int den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rate&) const = default;
};

inline long hamming_distance(const BitVec& a, const BitVec& b) {
    long d = 0;
    const size_t n = a.size() < b.size() ? a.size() : b.size();
    for (size_t i = 0; i < n; ++i)
        d += (a[i] ^ b[i]) & 1;
    d += static_cast<long>(a.size() > b.size() ? a.size() - b.size() : b.size() - a.size());
    return d;
}

}  // namespace lsmimo

#endif
