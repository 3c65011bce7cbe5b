#ifndef LSMIMO_MODEM_HPP
#define LSMIMO_MODEM_HPP

#include <cstddef>

#include "lsmimo/mimo.hpp"
#include "lsmimo/types.hpp"

namespace lsmimo {

/// Modulation alphabet with unit mean energy before the 1/sqrt(Nt) scaling.
/// points[label] is the point carrying that bit label (MSB = first bit).
struct Constellation {
    int order = 0;
    std::vector<cplx> points;

    int bits_per_symbol() const;

    /// Gray-labeled 4-QAM:
    ///   00 -> (+1+j)/sqrt(2)   01 -> (-1+j)/sqrt(2)
    ///   11 -> (-1-j)/sqrt(2)   10 -> (+1-j)/sqrt(2)
    static Constellation qam4();
};

/// Map a bit stream onto symbol vectors, one point per log2(M)-bit group,
/// groups assigned round-robin to antennas 0..nt-1, scaled by 1/sqrt(nt).
std::vector<CVec> modulate(const BitVec& bits, const Constellation& c, int nt);

struct SliceResult {
    cplx point;     // scaled constellation point
    unsigned label = 0;
    BitVec bits;
};

/// Nearest scaled constellation point; ties go to the smallest bit label.
SliceResult hard_slice(cplx z, const Constellation& c, int nt);

struct SoftDemapResult {
    /// Max-log LLR per coded bit, nt*log2(M) entries.
    /// Positive means bit 0 is the more likely hypothesis:
    ///   LLR_b = (min_{s: b=1} ||y-Hs||^2 - min_{s: b=0} ||y-Hs||^2) / (2*sigma2)
    std::vector<double> llr;
    BitVec ml_bits;          // bits of the jointly most likely hypothesis
    CVec ml_symbols;         // its scaled symbol vector
    double ml_metric = 0.0;  // its ||y-Hs||^2
    size_t hypotheses = 0;   // hypotheses enumerated (M^nt)
};

inline constexpr size_t kDefaultEnumCap = 1u << 16;

/// Exhaustive max-log demapper over all M^Nt hypotheses.
SoftDemapResult soft_bit_metrics(const CVec& y, const ChannelMatrix& h, const Constellation& c,
                                 double sigma2, size_t enum_cap = kDefaultEnumCap);

}  // namespace lsmimo

#endif
