#ifndef LSMIMO_MIMO_HPP
#define LSMIMO_MIMO_HPP

#include "lsmimo/rng.hpp"
#include "lsmimo/types.hpp"

namespace lsmimo {

/// One flat Rayleigh fading realization: nr x nt complex gains, entries CN(0,1).
struct ChannelMatrix {
    int nr = 0;
    int nt = 0;
    CVec e;  // row-major

    ChannelMatrix() = default;
    ChannelMatrix(int rows, int cols) : nr(rows), nt(cols), e(static_cast<size_t>(rows) * cols) {}

    cplx& at(int r, int c) { return e[static_cast<size_t>(r) * nt + c]; }
    const cplx& at(int r, int c) const { return e[static_cast<size_t>(r) * nt + c]; }
};

struct NoiseModel {
    double sigma2 = 0.0;  // per-dimension variance; complex variance is 2*sigma2
};

struct SnrPoint {
    double ebn0_db = 0.0;
    double sigma2 = 0.0;
};

/// Draw H with i.i.d. CN(0,1) entries (real/imag parts N(0, 1/2) each).
ChannelMatrix sample_channel(int nr, int nt, Rng& rng);

/// Noise vector of nr i.i.d. CN(0, 2*sigma2) samples.
CVec sample_noise(int nr, double sigma2, Rng& rng);

/// y = H*s + n.
CVec apply_channel(const ChannelMatrix& h, const CVec& s, const CVec& noise);

/// Noise variance for a target Eb/N0.
///
/// Total transmit energy per channel use is 1 and it carries
/// nt * bits_per_symbol * code_rate information bits, so
/// Eb = 1 / (nt * bits_per_symbol * code_rate) and N0 = 2*sigma2:
///   sigma2 = 1 / (2 * nt * bits_per_symbol * code_rate * 10^(ebn0_db/10))
double ebn0_to_sigma2(double ebn0_db, int nt, int bits_per_symbol, Rate code_rate);

SnrPoint make_snr_point(double ebn0_db, int nt, int bits_per_symbol, Rate code_rate);

}  // namespace lsmimo

#endif
