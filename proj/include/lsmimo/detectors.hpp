#ifndef LSMIMO_DETECTORS_HPP
#define LSMIMO_DETECTORS_HPP

#include "lsmimo/mimo.hpp"
#include "lsmimo/modem.hpp"
#include "lsmimo/types.hpp"

namespace lsmimo {

enum class DetectorKind { ZF, ML };

struct DetectorConfig {
    DetectorKind kind = DetectorKind::ZF;
    size_t enum_cap = kDefaultEnumCap;  // max M^Nt hypotheses for ML
};

struct DetectResult {
    CVec symbols;    // detected scaled constellation points
    BitVec bits;
    double metric = 0.0;  // ||y - H*s_hat||^2
    /// Set when the ZF solve found H effectively rank deficient. The caller
    /// counts every bit of the vector as erroneous instead of crashing.
    bool singular_channel = false;
};

/// Linear zero-forcing: solve (H^H H) x = H^H y (H^-1 y when square), then
/// slice each entry. Condition estimates above 1e12 flag a singular channel.
DetectResult zf_detect(const ChannelMatrix& h, const CVec& y, const Constellation& c);

/// Exhaustive maximum-likelihood search over all M^Nt symbol vectors.
/// Ties break toward the lexicographically smallest bit label.
DetectResult ml_detect(const ChannelMatrix& h, const CVec& y, const Constellation& c,
                       size_t enum_cap = kDefaultEnumCap);

/// Hypotheses an ML search would enumerate; throws CapacityError above cap.
size_t ml_enumeration_size(const Constellation& c, int nt, size_t enum_cap = kDefaultEnumCap);

}  // namespace lsmimo

#endif
