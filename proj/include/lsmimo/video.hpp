#ifndef LSMIMO_VIDEO_HPP
#define LSMIMO_VIDEO_HPP

#include <iosfwd>
#include <set>
#include <string>

#include "lsmimo/types.hpp"

namespace lsmimo {

/// Ordered 8-bit planar frames, luma mandatory, 4:2:0 chroma optional.
struct FrameSequence {
    int width = 0;
    int height = 0;
    double fps = 30.0;
    bool has_chroma = false;
    std::vector<std::vector<uint8_t>> luma;
    std::vector<std::vector<uint8_t>> cb;
    std::vector<std::vector<uint8_t>> cr;

    size_t frame_count() const { return luma.size(); }
};

/// Per-frame reference index (-1 for none, past references only) and the
/// number of retained decoded pictures available as copy donors.
struct ReferenceStructure {
    std::vector<int> ref;
    int dpb_capacity = 16;

    static ReferenceStructure prev_frame(int frames, int dpb_capacity = 16);
    /// Every intra_period-th frame has no reference, others point one back.
    static ReferenceStructure intra_period(int frames, int period, int dpb_capacity = 16);
};

/// Read raw planar frames from a file; FormatError when the file is short.
FrameSequence load_frames(const std::string& path, int width, int height, int count,
                          bool with_chroma = false);

/// Test pattern: luma(x, y, t) = (x + y + t) mod 256.
FrameSequence synthetic_gradient(int width, int height, int count);

/// Two-stage frame-copy concealment, processing lost frames in ascending
/// order so earlier concealed frames can serve as donors:
///   stage 1: copy the reference picture when it is available and within
///            the DPB window;
///   stage 2: copy the nearest-in-time available picture, earlier preferred
///            on distance ties.
/// Throws ConcealmentError when every frame is lost.
FrameSequence conceal(const FrameSequence& seq, const std::set<int>& lost,
                      const ReferenceStructure& refs);

struct PsnrResult {
    std::vector<double> per_frame_db;
    double mean_db = 0.0;
};

/// Per-frame luma PSNR = 10*log10(255^2 / MSE), capped at cap_db when the
/// frames are identical; the mean is the arithmetic mean of capped values.
PsnrResult psnr_y(const FrameSequence& ref, const FrameSequence& rec, double cap_db = 100.0);

void write_psnr_csv(const PsnrResult& r, std::ostream& os);

}  // namespace lsmimo

#endif
