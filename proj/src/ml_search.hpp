#ifndef LSMIMO_SRC_ML_SEARCH_HPP
#define LSMIMO_SRC_ML_SEARCH_HPP

// Shared exhaustive hypothesis search behind ml_detect and soft_bit_metrics.

#include "lsmimo/mimo.hpp"
#include "lsmimo/modem.hpp"

namespace lsmimo::detail {

struct MlSearchResult {
    std::vector<unsigned> labels;  // per antenna, jointly most likely
    double metric = 0.0;
    size_t hypotheses = 0;
    std::vector<double> min0;      // per bit position, only when want_llr
    std::vector<double> min1;
};

MlSearchResult ml_search(const CVec& y, const ChannelMatrix& h, const Constellation& c,
                         bool want_llr, size_t enum_cap);

BitVec labels_to_bits(const std::vector<unsigned>& labels, int bits_per_symbol);
CVec labels_to_symbols(const std::vector<unsigned>& labels, const Constellation& c, int nt);

}  // namespace lsmimo::detail

#endif
