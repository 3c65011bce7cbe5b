#include "lsmimo/mimo.hpp"

#include <cmath>

#include "lsmimo/errors.hpp"

namespace lsmimo {

ChannelMatrix sample_channel(int nr, int nt, Rng& rng) {
    if (nt < 1 || nr < nt)
        throw DimensionError("sample_channel: need nr >= nt >= 1");
    ChannelMatrix h(nr, nt);
    for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nt; ++c)
            h.at(r, c) = rng.next_cn(0.5);
    return h;
}

CVec sample_noise(int nr, double sigma2, Rng& rng) {
    if (nr < 1)
        throw DimensionError("sample_noise: nr must be positive");
    if (!(sigma2 > 0.0))
        throw ParameterError("sample_noise: sigma2 must be positive");
    CVec n(nr);
    for (auto& v : n)
        v = rng.next_cn(sigma2);
    return n;
}

CVec apply_channel(const ChannelMatrix& h, const CVec& s, const CVec& noise) {
    if (static_cast<int>(s.size()) != h.nt)
        throw DimensionError("apply_channel: symbol vector length does not match nt");
    if (static_cast<int>(noise.size()) != h.nr)
        throw DimensionError("apply_channel: noise length does not match nr");
    CVec y(h.nr);
    for (int r = 0; r < h.nr; ++r) {
        cplx acc = noise[r];
        const cplx* row = &h.e[static_cast<size_t>(r) * h.nt];
        for (int c = 0; c < h.nt; ++c)
            acc += row[c] * s[c];
        y[r] = acc;
    }
    return y;
}

double ebn0_to_sigma2(double ebn0_db, int nt, int bits_per_symbol, Rate code_rate) {
    if (nt < 1)
        throw ParameterError("ebn0_to_sigma2: nt must be >= 1");
    if (bits_per_symbol < 1)
        throw ParameterError("ebn0_to_sigma2: bits_per_symbol must be >= 1");
    if (code_rate.num <= 0 || code_rate.den <= 0)
        throw ParameterError("ebn0_to_sigma2: code_rate must be positive");
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    // Dividing by num and multiplying by den keeps rational rates exact.
    return static_cast<double>(code_rate.den) /
           (2.0 * nt * bits_per_symbol * code_rate.num * ebn0);
}

SnrPoint make_snr_point(double ebn0_db, int nt, int bits_per_symbol, Rate code_rate) {
    return {ebn0_db, ebn0_to_sigma2(ebn0_db, nt, bits_per_symbol, code_rate)};
}

}  // namespace lsmimo
