#include "lsmimo/video.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "lsmimo/errors.hpp"

namespace lsmimo {

ReferenceStructure ReferenceStructure::prev_frame(int frames, int dpb_capacity) {
    ReferenceStructure r;
    r.dpb_capacity = dpb_capacity;
    r.ref.resize(frames);
    for (int i = 0; i < frames; ++i)
        r.ref[i] = i - 1;  // frame 0 gets -1
    return r;
}

ReferenceStructure ReferenceStructure::intra_period(int frames, int period, int dpb_capacity) {
    if (period < 1)
        throw ParameterError("ReferenceStructure: intra period must be >= 1");
    ReferenceStructure r;
    r.dpb_capacity = dpb_capacity;
    r.ref.resize(frames);
    for (int i = 0; i < frames; ++i)
        r.ref[i] = (i % period == 0) ? -1 : i - 1;
    return r;
}

FrameSequence load_frames(const std::string& path, int width, int height, int count,
                          bool with_chroma) {
    if (width < 1 || height < 1 || count < 1)
        throw ParameterError("load_frames: dimensions and count must be positive");
    if (with_chroma && (width % 2 || height % 2))
        throw ParameterError("load_frames: 4:2:0 chroma needs even dimensions");

    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("load_frames: cannot open " + path);

    const size_t ysize = static_cast<size_t>(width) * height;
    const size_t csize = with_chroma ? ysize / 4 : 0;

    FrameSequence seq;
    seq.width = width;
    seq.height = height;
    seq.has_chroma = with_chroma;
    for (int t = 0; t < count; ++t) {
        std::vector<uint8_t> y(ysize);
        in.read(reinterpret_cast<char*>(y.data()), static_cast<std::streamsize>(ysize));
        if (static_cast<size_t>(in.gcount()) != ysize)
            throw FormatError("load_frames: truncated file " + path);
        seq.luma.push_back(std::move(y));
        if (with_chroma) {
            std::vector<uint8_t> u(csize), v(csize);
            in.read(reinterpret_cast<char*>(u.data()), static_cast<std::streamsize>(csize));
            if (static_cast<size_t>(in.gcount()) != csize)
                throw FormatError("load_frames: truncated file " + path);
            in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(csize));
            if (static_cast<size_t>(in.gcount()) != csize)
                throw FormatError("load_frames: truncated file " + path);
            seq.cb.push_back(std::move(u));
            seq.cr.push_back(std::move(v));
        }
    }
    return seq;
}

FrameSequence synthetic_gradient(int width, int height, int count) {
    if (width < 1 || height < 1 || count < 1)
        throw ParameterError("synthetic_gradient: dimensions and count must be positive");
    FrameSequence seq;
    seq.width = width;
    seq.height = height;
    for (int t = 0; t < count; ++t) {
        std::vector<uint8_t> y(static_cast<size_t>(width) * height);
        for (int r = 0; r < height; ++r)
            for (int c = 0; c < width; ++c)
                y[static_cast<size_t>(r) * width + c] = static_cast<uint8_t>((c + r + t) & 255);
        seq.luma.push_back(std::move(y));
    }
    return seq;
}

FrameSequence conceal(const FrameSequence& seq, const std::set<int>& lost,
                      const ReferenceStructure& refs) {
    const int n = static_cast<int>(seq.frame_count());
    if (refs.ref.size() != static_cast<size_t>(n))
        throw ParameterError("conceal: reference structure does not match frame count");
    if (refs.dpb_capacity < 1)
        throw ParameterError("conceal: DPB capacity must be >= 1");
    for (int i : lost)
        if (i < 0 || i >= n)
            throw ParameterError("conceal: lost frame index out of range");
    for (int i = 0; i < n; ++i)
        if (refs.ref[i] >= i)
            throw ParameterError("conceal: references must point to earlier frames");
    if (static_cast<int>(lost.size()) == n)
        throw ConcealmentError("conceal: every frame lost, no donor exists");

    FrameSequence out = seq;
    std::vector<char> filled(n, 1);
    for (int i : lost)
        filled[i] = 0;

    auto copy_frame = [&](int dst, int src) {
        out.luma[dst] = out.luma[src];
        if (out.has_chroma) {
            out.cb[dst] = out.cb[src];
            out.cr[dst] = out.cr[src];
        }
        filled[dst] = 1;
    };

    // Stage 1: reference-picture copies, ascending so chains cascade.
    for (int i : lost) {
        const int r = refs.ref[i];
        if (r >= 0 && i - r <= refs.dpb_capacity && filled[r])
            copy_frame(i, r);
    }
    // Stage 2: nearest available picture for whatever is still missing.
    for (int i = 0; i < n; ++i) {
        if (filled[i])
            continue;
        for (int d = 1; d < n; ++d) {
            if (i - d >= 0 && filled[i - d]) {
                copy_frame(i, i - d);
                break;
            }
            if (i + d < n && filled[i + d]) {
                copy_frame(i, i + d);
                break;
            }
        }
    }
    return out;
}

PsnrResult psnr_y(const FrameSequence& ref, const FrameSequence& rec, double cap_db) {
    if (ref.width != rec.width || ref.height != rec.height ||
        ref.frame_count() != rec.frame_count())
        throw FormatError("psnr_y: sequence dimensions differ");
    if (ref.frame_count() == 0)
        throw FormatError("psnr_y: empty sequence");

    const size_t npix = static_cast<size_t>(ref.width) * ref.height;
    PsnrResult res;
    res.per_frame_db.reserve(ref.frame_count());
    double sum = 0.0;
    for (size_t t = 0; t < ref.frame_count(); ++t) {
        double se = 0.0;
        const uint8_t* a = ref.luma[t].data();
        const uint8_t* b = rec.luma[t].data();
        for (size_t i = 0; i < npix; ++i) {
            const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
            se += d * d;
        }
        const double mse = se / static_cast<double>(npix);
        const double psnr = mse > 0.0 ? 10.0 * std::log10(255.0 * 255.0 / mse) : cap_db;
        res.per_frame_db.push_back(std::min(psnr, cap_db));
        sum += res.per_frame_db.back();
    }
    res.mean_db = sum / static_cast<double>(res.per_frame_db.size());
    return res;
}

void write_psnr_csv(const PsnrResult& r, std::ostream& os) {
    os << "frame,psnr_y_db\n";
    char buf[64];
    for (size_t i = 0; i < r.per_frame_db.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.6f\n", i, r.per_frame_db[i]);
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "mean,%.6f\n", r.mean_db);
    os << buf;
}

}  // namespace lsmimo
