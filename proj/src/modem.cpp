#include "lsmimo/modem.hpp"

#include <cmath>
#include <limits>

#include "lsmimo/errors.hpp"
#include "ml_search.hpp"

namespace lsmimo {

int Constellation::bits_per_symbol() const {
    int b = 0;
    while ((1 << b) < order)
        ++b;
    return b;
}

Constellation Constellation::qam4() {
    const double a = 1.0 / std::sqrt(2.0);
    Constellation c;
    c.order = 4;
    c.points = {
        {+a, +a},  // 00
        {-a, +a},  // 01
        {+a, -a},  // 10
        {-a, -a},  // 11
    };
    return c;
}

std::vector<CVec> modulate(const BitVec& bits, const Constellation& c, int nt) {
    if (nt < 1)
        throw ParameterError("modulate: nt must be >= 1");
    const int nb = c.bits_per_symbol();
    const size_t group = static_cast<size_t>(nt) * nb;
    if (group == 0 || bits.size() % group != 0)
        throw FramingError("modulate: bit count not divisible by nt*log2(M)");
    const double scale = 1.0 / std::sqrt(static_cast<double>(nt));
    std::vector<CVec> out(bits.size() / group, CVec(nt));
    size_t pos = 0;
    for (auto& sv : out) {
        for (int i = 0; i < nt; ++i) {
            unsigned label = 0;
            for (int b = 0; b < nb; ++b)
                label = (label << 1) | (bits[pos++] & 1u);
            sv[i] = c.points[label] * scale;
        }
    }
    return out;
}

SliceResult hard_slice(cplx z, const Constellation& c, int nt) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(nt));
    const int nb = c.bits_per_symbol();
    double best = std::numeric_limits<double>::infinity();
    unsigned best_label = 0;
    for (unsigned label = 0; label < static_cast<unsigned>(c.order); ++label) {
        const double d = std::norm(z - c.points[label] * scale);
        if (d < best) {  // strict: ties keep the smaller label
            best = d;
            best_label = label;
        }
    }
    SliceResult r;
    r.label = best_label;
    r.point = c.points[best_label] * scale;
    r.bits.resize(nb);
    for (int b = 0; b < nb; ++b)
        r.bits[b] = (best_label >> (nb - 1 - b)) & 1u;
    return r;
}

SoftDemapResult soft_bit_metrics(const CVec& y, const ChannelMatrix& h, const Constellation& c,
                                 double sigma2, size_t enum_cap) {
    if (!(sigma2 > 0.0))
        throw ParameterError("soft_bit_metrics: sigma2 must be positive");
    auto s = detail::ml_search(y, h, c, /*want_llr=*/true, enum_cap);
    const int nb = c.bits_per_symbol();
    SoftDemapResult r;
    r.llr.resize(s.min0.size());
    for (size_t i = 0; i < r.llr.size(); ++i)
        r.llr[i] = (s.min1[i] - s.min0[i]) / (2.0 * sigma2);
    r.ml_bits = detail::labels_to_bits(s.labels, nb);
    r.ml_symbols = detail::labels_to_symbols(s.labels, c, h.nt);
    r.ml_metric = s.metric;
    r.hypotheses = s.hypotheses;
    return r;
}

namespace detail {

BitVec labels_to_bits(const std::vector<unsigned>& labels, int bits_per_symbol) {
    BitVec bits(labels.size() * bits_per_symbol);
    size_t pos = 0;
    for (unsigned label : labels)
        for (int b = 0; b < bits_per_symbol; ++b)
            bits[pos++] = (label >> (bits_per_symbol - 1 - b)) & 1u;
    return bits;
}

CVec labels_to_symbols(const std::vector<unsigned>& labels, const Constellation& c, int nt) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(nt));
    CVec s(labels.size());
    for (size_t i = 0; i < labels.size(); ++i)
        s[i] = c.points[labels[i]] * scale;
    return s;
}

MlSearchResult ml_search(const CVec& y, const ChannelMatrix& h, const Constellation& c,
                         bool want_llr, size_t enum_cap) {
    const int nr = h.nr;
    const int nt = h.nt;
    const int M = c.order;
    const int nb = c.bits_per_symbol();
    if (static_cast<int>(y.size()) != nr)
        throw DimensionError("ml_search: received vector length does not match nr");
    if (nt < 1 || nr < 1 || M < 2)
        throw DimensionError("ml_search: invalid dimensions");

    size_t hypotheses = 1;
    for (int i = 0; i < nt; ++i) {
        hypotheses *= static_cast<size_t>(M);
        if (hypotheses > enum_cap)
            throw CapacityError("ml_search: M^Nt exceeds the enumeration cap");
    }

    // cand[(i*M + l)*nr + r] = H column i times scaled point l
    const double scale = 1.0 / std::sqrt(static_cast<double>(nt));
    CVec cand(static_cast<size_t>(nt) * M * nr);
    for (int i = 0; i < nt; ++i)
        for (int l = 0; l < M; ++l) {
            const cplx p = c.points[l] * scale;
            for (int r = 0; r < nr; ++r)
                cand[(static_cast<size_t>(i) * M + l) * nr + r] = h.at(r, i) * p;
        }

    MlSearchResult res;
    res.hypotheses = hypotheses;
    res.metric = std::numeric_limits<double>::infinity();
    res.labels.assign(nt, 0);
    if (want_llr) {
        res.min0.assign(static_cast<size_t>(nt) * nb, std::numeric_limits<double>::infinity());
        res.min1.assign(static_cast<size_t>(nt) * nb, std::numeric_limits<double>::infinity());
    }

    // Depth-first walk over label vectors in lexicographic order, keeping
    // partial residuals y - sum_{j<i} cand_j so each leaf costs O(nr).
    std::vector<unsigned> lab(nt, 0);
    CVec part(static_cast<size_t>(nt + 1) * nr);
    for (int r = 0; r < nr; ++r)
        part[r] = y[r];

    int dirty = 0;
    for (;;) {
        for (int i = dirty; i < nt; ++i) {
            const cplx* ci = &cand[(static_cast<size_t>(i) * M + lab[i]) * nr];
            const cplx* src = &part[static_cast<size_t>(i) * nr];
            cplx* dst = &part[static_cast<size_t>(i + 1) * nr];
            for (int r = 0; r < nr; ++r)
                dst[r] = src[r] - ci[r];
        }
        double metric = 0.0;
        const cplx* leaf = &part[static_cast<size_t>(nt) * nr];
        for (int r = 0; r < nr; ++r)
            metric += std::norm(leaf[r]);

        if (metric < res.metric) {  // strict: first (lex-smallest) label wins ties
            res.metric = metric;
            res.labels = lab;
        }
        if (want_llr) {
            for (int i = 0; i < nt; ++i)
                for (int b = 0; b < nb; ++b) {
                    const size_t pos = static_cast<size_t>(i) * nb + b;
                    auto& slot = ((lab[i] >> (nb - 1 - b)) & 1u) ? res.min1[pos] : res.min0[pos];
                    if (metric < slot)
                        slot = metric;
                }
        }

        int i = nt - 1;
        while (i >= 0 && lab[i] == static_cast<unsigned>(M - 1)) {
            lab[i] = 0;
            --i;
        }
        if (i < 0)
            break;
        ++lab[i];
        dirty = i;
    }
    return res;
}

}  // namespace detail

}  // namespace lsmimo
