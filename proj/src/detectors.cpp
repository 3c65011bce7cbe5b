#include "lsmimo/detectors.hpp"

#include <cmath>
#include <limits>

#include "lsmimo/errors.hpp"
#include "ml_search.hpp"

namespace lsmimo {

namespace {

constexpr double kCondLimit = 1e12;

// Cholesky solve of A x = b for Hermitian positive definite A (column count
// of H is tiny, so O(n^3) with no blocking is fine). Returns false when a
// pivot collapses or the diagonal spread suggests cond(A) > kCondLimit.
bool cholesky_solve(std::vector<cplx> a, int n, CVec b, CVec& x) {
    std::vector<double> diag(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double d = a[static_cast<size_t>(j) * n + j].real();
        for (int k = 0; k < j; ++k)
            d -= std::norm(a[static_cast<size_t>(j) * n + k]);
        if (!(d > 0.0) || !std::isfinite(d))
            return false;
        const double l = std::sqrt(d);
        diag[j] = l;
        a[static_cast<size_t>(j) * n + j] = l;
        for (int i = j + 1; i < n; ++i) {
            cplx v = a[static_cast<size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                v -= a[static_cast<size_t>(i) * n + k] *
                     std::conj(a[static_cast<size_t>(j) * n + k]);
            a[static_cast<size_t>(i) * n + j] = v / l;
        }
    }
    double dmin = diag[0], dmax = diag[0];
    for (double d : diag) {
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    // diag(L) spread squared is a cheap lower bound on cond(A)
    if ((dmax / dmin) * (dmax / dmin) > kCondLimit)
        return false;

    // forward: L z = b
    for (int i = 0; i < n; ++i) {
        cplx v = b[i];
        for (int k = 0; k < i; ++k)
            v -= a[static_cast<size_t>(i) * n + k] * b[k];
        b[i] = v / diag[i];
    }
    // backward: L^H x = z
    x.assign(n, cplx{});
    for (int i = n - 1; i >= 0; --i) {
        cplx v = b[i];
        for (int k = i + 1; k < n; ++k)
            v -= std::conj(a[static_cast<size_t>(k) * n + i]) * x[k];
        x[i] = v / diag[i];
    }
    return true;
}

// Gaussian elimination with partial pivoting for square H, solving H x = y.
bool lu_solve(std::vector<cplx> a, int n, CVec b, CVec& x) {
    std::vector<double> pivots(n, 0.0);
    for (int j = 0; j < n; ++j) {
        int p = j;
        double best = std::abs(a[static_cast<size_t>(j) * n + j]);
        for (int i = j + 1; i < n; ++i) {
            const double v = std::abs(a[static_cast<size_t>(i) * n + j]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (!(best > 0.0) || !std::isfinite(best))
            return false;
        if (p != j) {
            for (int k = 0; k < n; ++k)
                std::swap(a[static_cast<size_t>(p) * n + k], a[static_cast<size_t>(j) * n + k]);
            std::swap(b[p], b[j]);
        }
        pivots[j] = best;
        const cplx pj = a[static_cast<size_t>(j) * n + j];
        for (int i = j + 1; i < n; ++i) {
            const cplx f = a[static_cast<size_t>(i) * n + j] / pj;
            a[static_cast<size_t>(i) * n + j] = f;
            for (int k = j + 1; k < n; ++k)
                a[static_cast<size_t>(i) * n + k] -= f * a[static_cast<size_t>(j) * n + k];
            b[i] -= f * b[j];
        }
    }
    double pmin = pivots[0], pmax = pivots[0];
    for (double p : pivots) {
        pmin = std::min(pmin, p);
        pmax = std::max(pmax, p);
    }
    if (pmax / pmin > kCondLimit)
        return false;
    x.assign(n, cplx{});
    for (int i = n - 1; i >= 0; --i) {
        cplx v = b[i];
        for (int k = i + 1; k < n; ++k)
            v -= a[static_cast<size_t>(i) * n + k] * x[k];
        x[i] = v / a[static_cast<size_t>(i) * n + i];
    }
    return true;
}

double residual_metric(const ChannelMatrix& h, const CVec& y, const CVec& s) {
    double m = 0.0;
    for (int r = 0; r < h.nr; ++r) {
        cplx acc = y[r];
        for (int c = 0; c < h.nt; ++c)
            acc -= h.at(r, c) * s[c];
        m += std::norm(acc);
    }
    return m;
}

}  // namespace

DetectResult zf_detect(const ChannelMatrix& h, const CVec& y, const Constellation& c) {
    if (static_cast<int>(y.size()) != h.nr)
        throw DimensionError("zf_detect: received vector length does not match nr");
    if (h.nt < 1 || h.nr < h.nt)
        throw DimensionError("zf_detect: need nr >= nt >= 1");

    const int nt = h.nt;
    const int nb = c.bits_per_symbol();
    CVec x;
    bool ok;
    if (h.nr == nt) {
        ok = lu_solve(h.e, nt, y, x);
    } else {
        // normal equations: (H^H H) x = H^H y
        std::vector<cplx> gram(static_cast<size_t>(nt) * nt);
        CVec rhs(nt);
        for (int i = 0; i < nt; ++i) {
            cplx ri{};
            for (int r = 0; r < h.nr; ++r)
                ri += std::conj(h.at(r, i)) * y[r];
            rhs[i] = ri;
            for (int j = 0; j <= i; ++j) {
                cplx g{};
                for (int r = 0; r < h.nr; ++r)
                    g += std::conj(h.at(r, i)) * h.at(r, j);
                gram[static_cast<size_t>(i) * nt + j] = g;
                gram[static_cast<size_t>(j) * nt + i] = std::conj(g);
            }
        }
        ok = cholesky_solve(std::move(gram), nt, std::move(rhs), x);
    }

    DetectResult res;
    if (!ok) {
        res.singular_channel = true;
        res.symbols.assign(nt, cplx{});
        res.bits.assign(static_cast<size_t>(nt) * nb, 0);
        res.metric = std::numeric_limits<double>::infinity();
        return res;
    }
    res.symbols.resize(nt);
    res.bits.reserve(static_cast<size_t>(nt) * nb);
    for (int i = 0; i < nt; ++i) {
        const SliceResult sr = hard_slice(x[i], c, nt);
        res.symbols[i] = sr.point;
        res.bits.insert(res.bits.end(), sr.bits.begin(), sr.bits.end());
    }
    res.metric = residual_metric(h, y, res.symbols);
    return res;
}

DetectResult ml_detect(const ChannelMatrix& h, const CVec& y, const Constellation& c,
                       size_t enum_cap) {
    auto s = detail::ml_search(y, h, c, /*want_llr=*/false, enum_cap);
    DetectResult res;
    res.bits = detail::labels_to_bits(s.labels, c.bits_per_symbol());
    res.symbols = detail::labels_to_symbols(s.labels, c, h.nt);
    res.metric = s.metric;
    return res;
}

size_t ml_enumeration_size(const Constellation& c, int nt, size_t enum_cap) {
    size_t n = 1;
    for (int i = 0; i < nt; ++i) {
        n *= static_cast<size_t>(c.order);
        if (n > enum_cap)
            throw CapacityError("ml_enumeration_size: M^Nt exceeds the enumeration cap");
    }
    return n;
}

}  // namespace lsmimo
