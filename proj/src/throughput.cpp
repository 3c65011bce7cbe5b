#include "lsmimo/throughput.hpp"

#include "lsmimo/errors.hpp"

namespace lsmimo {

LteParams LteParams::table1_ls() {
    return LteParams{};
}

LteParams LteParams::table1_benchmark() {
    LteParams p;
    p.n_r = 4;
    p.r_c = {1, 3};
    return p;
}

double raw_throughput(const LteParams& p) {
    if (p.m_b < 1 || p.m_spts < 1 || p.m_rb < 1 || p.m_f < 1 || p.n_t < 1)
        throw ParameterError("raw_throughput: counting constants must be positive");
    if (!(p.t_ts_s > 0.0))
        throw ParameterError("raw_throughput: slot duration must be positive");
    if (p.r_c.num <= 0 || p.r_c.den <= 0)
        throw ParameterError("raw_throughput: code rate must be positive");
    // Integer numerator keeps rational rates exact (67200/3 = 22400, not
    // 67200 * 0.333...).
    const long long bits = 1LL * p.m_b * p.m_spts * p.m_rb * p.m_f * p.n_t * p.r_c.num;
    return static_cast<double>(bits) / p.r_c.den / p.t_ts_s;
}

double effective_throughput(double c_raw_bps, double ppr) {
    if (!(ppr >= 0.0) || !(ppr <= 1.0))
        throw ParameterError("effective_throughput: ppr must be in [0,1]");
    if (!(c_raw_bps >= 0.0))
        throw ParameterError("effective_throughput: c_raw must be nonnegative");
    return c_raw_bps * (1.0 - ppr);
}

}  // namespace lsmimo
