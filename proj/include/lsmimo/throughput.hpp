#ifndef LSMIMO_THROUGHPUT_HPP
#define LSMIMO_THROUGHPUT_HPP

#include "lsmimo/types.hpp"

namespace lsmimo {

/// LTE-like counting constants. Bandwidth is carried as metadata only; the
/// raw-throughput formula does not consume it.
struct LteParams {
    int m_b = 2;             // bits per modulation symbol
    int n_t = 4;             // transmit antennas
    int n_r = 40;            // receive antennas
    double t_ts_s = 0.5e-3;  // slot duration
    int m_spts = 7;          // OFDM symbols per slot
    double bandwidth_hz = 20e6;
    int m_rb = 100;          // resource blocks per slot
    int m_f = 12;            // subcarriers per RB
    Rate r_c{1, 1};

    static LteParams table1_ls();         // 40x4, uncoded
    static LteParams table1_benchmark();  // 4x4, rate 1/3
};

/// C_raw = M_b * M_spts * M_RB * M_f * N_t * R_c / T_ts  [bits/second]
double raw_throughput(const LteParams& p);

/// C_eff = C_raw * (1 - BER_PPR)
double effective_throughput(double c_raw_bps, double ppr);

}  // namespace lsmimo

#endif
