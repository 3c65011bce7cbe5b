#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lsmimo/errors.hpp"
#include "lsmimo/rng.hpp"
#include "lsmimo/video.hpp"

using namespace lsmimo;

namespace {

std::string write_temp(const std::vector<uint8_t>& data, const char* name) {
    std::string path = std::string("/tmp/lsmimo_test_") + name;
    std::ofstream os(path, std::ios::binary);
    os.write(reinterpret_cast<const char*>(data.data()),
             static_cast<std::streamsize>(data.size()));
    return path;
}

}  // namespace

TEST_CASE("gradient generator reads back exactly through a raw file") {
    const int w = 32, h = 16, n = 8;
    const FrameSequence src = synthetic_gradient(w, h, n);
    std::vector<uint8_t> raw;
    for (const auto& f : src.luma)
        raw.insert(raw.end(), f.begin(), f.end());
    const std::string path = write_temp(raw, "gradient.yuv");

    const FrameSequence back = load_frames(path, w, h, n);
    REQUIRE(back.frame_count() == static_cast<size_t>(n));
    for (int t = 0; t < n; ++t)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                REQUIRE(back.luma[t][y * w + x] == ((x + y + t) & 255));
    std::remove(path.c_str());
}

TEST_CASE("frame count arithmetic and truncation") {
    const int w = 416, h = 240;
    std::vector<uint8_t> raw(static_cast<size_t>(w) * h * 3, 7);
    const std::string path = write_temp(raw, "exact.yuv");
    CHECK(load_frames(path, w, h, 3).frame_count() == 3);
    CHECK_THROWS_AS(load_frames(path, w, h, 4), FormatError);
    std::remove(path.c_str());

    raw.pop_back();  // one byte short
    const std::string short_path = write_temp(raw, "short.yuv");
    CHECK_THROWS_AS(load_frames(short_path, w, h, 3), FormatError);
    std::remove(short_path.c_str());
}

TEST_CASE("stage-1 concealment copies the reference picture") {
    const FrameSequence seq = synthetic_gradient(16, 16, 5);
    const auto refs = ReferenceStructure::prev_frame(5);
    const FrameSequence out = conceal(seq, {2}, refs);
    CHECK(out.luma[2] == seq.luma[1]);
    CHECK(out.luma[3] == seq.luma[3]);  // untouched
}

TEST_CASE("stage-2 concealment copies the closest picture in time") {
    const FrameSequence seq = synthetic_gradient(16, 16, 5);
    const auto refs = ReferenceStructure::prev_frame(5);  // ref(0) = none
    const FrameSequence out = conceal(seq, {0}, refs);
    CHECK(out.luma[0] == seq.luma[1]);
}

TEST_CASE("chained losses cascade through concealed donors") {
    const FrameSequence seq = synthetic_gradient(16, 16, 5);
    const auto refs = ReferenceStructure::prev_frame(5);
    const FrameSequence out = conceal(seq, {2, 3}, refs);
    // frame 2 := frame 1, then frame 3 := concealed frame 2 == frame 1
    CHECK(out.luma[2] == seq.luma[1]);
    CHECK(out.luma[3] == seq.luma[1]);
}

TEST_CASE("references outside the DPB window fall through to stage 2") {
    const FrameSequence seq = synthetic_gradient(16, 16, 12);
    ReferenceStructure refs = ReferenceStructure::prev_frame(12, /*dpb_capacity=*/2);
    refs.ref[8] = 1;  // distance 7 > capacity 2
    const FrameSequence out = conceal(seq, {8}, refs);
    CHECK(out.luma[8] == seq.luma[7]);  // nearest in time, not the reference
}

TEST_CASE("earlier frame wins a stage-2 distance tie") {
    const FrameSequence seq = synthetic_gradient(16, 16, 5);
    ReferenceStructure refs = ReferenceStructure::prev_frame(5);
    refs.ref[2] = -1;  // force stage 2 for frame 2
    const FrameSequence out = conceal(seq, {2}, refs);
    CHECK(out.luma[2] == seq.luma[1]);  // 1 and 3 are equidistant
}

TEST_CASE("concealment is total whenever one frame survives") {
    Rng rng = Rng::from_seed(71);
    const int n = 20;
    const FrameSequence seq = synthetic_gradient(8, 8, n);
    const auto refs = ReferenceStructure::intra_period(n, 6, 4);
    for (int trial = 0; trial < 100; ++trial) {
        std::set<int> lost;
        const int keep = static_cast<int>(rng.next_below(n));
        for (int i = 0; i < n; ++i)
            if (i != keep && rng.next_below(2))
                lost.insert(i);
        const FrameSequence out = conceal(seq, lost, refs);
        REQUIRE(out.frame_count() == static_cast<size_t>(n));
        for (const auto& f : out.luma)
            REQUIRE(f.size() == 64);
    }
}

TEST_CASE("losing every frame is a concealment error") {
    const FrameSequence seq = synthetic_gradient(8, 8, 4);
    const auto refs = ReferenceStructure::prev_frame(4);
    CHECK_THROWS_AS(conceal(seq, {0, 1, 2, 3}, refs), ConcealmentError);
    CHECK_THROWS_AS(conceal(seq, {7}, refs), ParameterError);
}

TEST_CASE("psnr of identical sequences is the cap") {
    const FrameSequence seq = synthetic_gradient(16, 16, 4);
    const PsnrResult r = psnr_y(seq, seq);
    for (double v : r.per_frame_db)
        CHECK(v == 100.0);
    CHECK(r.mean_db == 100.0);

    const PsnrResult r2 = psnr_y(seq, seq, 60.0);
    CHECK(r2.mean_db == 60.0);  // cap is configurable
}

TEST_CASE("psnr of a full-scale difference is 0 dB") {
    FrameSequence a = synthetic_gradient(8, 8, 1);
    FrameSequence b = a;
    for (auto& f : a.luma)
        std::fill(f.begin(), f.end(), 0);
    for (auto& f : b.luma)
        std::fill(f.begin(), f.end(), 255);
    CHECK(psnr_y(a, b).mean_db == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("psnr hand example: one pixel off by 16 in an 8x8 frame") {
    FrameSequence a = synthetic_gradient(8, 8, 1);
    FrameSequence b = a;
    b.luma[0][13] = static_cast<uint8_t>(b.luma[0][13] + 16);
    // MSE = 256/64 = 4, PSNR = 10*log10(65025/4)
    CHECK(psnr_y(a, b).mean_db == doctest::Approx(10.0 * std::log10(65025.0 / 4.0)).epsilon(1e-9));
    CHECK(psnr_y(a, b).mean_db == doctest::Approx(42.11).epsilon(1e-3));
}

TEST_CASE("psnr is strictly decreasing in MSE") {
    FrameSequence a = synthetic_gradient(8, 8, 1);
    FrameSequence small = a, big = a;
    small.luma[0][0] = static_cast<uint8_t>(small.luma[0][0] ^ 4);
    big.luma[0][0] = static_cast<uint8_t>(big.luma[0][0] ^ 64);
    CHECK(psnr_y(a, small).mean_db > psnr_y(a, big).mean_db);
}

TEST_CASE("psnr rejects mismatched shapes") {
    const FrameSequence a = synthetic_gradient(8, 8, 2);
    const FrameSequence b = synthetic_gradient(8, 8, 3);
    const FrameSequence c = synthetic_gradient(8, 4, 2);
    CHECK_THROWS_AS(psnr_y(a, b), FormatError);
    CHECK_THROWS_AS(psnr_y(a, c), FormatError);
}

TEST_CASE("mean psnr is non-increasing for nested losses with shared donors") {
    const FrameSequence seq = synthetic_gradient(16, 16, 8);
    const auto refs = ReferenceStructure::prev_frame(8);
    // donors for {2} and {2,5}: frame 2 copies 1 in both cases, 5 copies 4
    const double a = psnr_y(seq, conceal(seq, {2}, refs)).mean_db;
    const double b = psnr_y(seq, conceal(seq, {2, 5}, refs)).mean_db;
    const double c = psnr_y(seq, conceal(seq, {2, 5, 6}, refs)).mean_db;
    CHECK(a >= b);
    CHECK(b >= c);
}

TEST_CASE("per-frame psnr csv") {
    const FrameSequence a = synthetic_gradient(8, 8, 2);
    std::ostringstream os;
    write_psnr_csv(psnr_y(a, a), os);
    CHECK(os.str() ==
          "frame,psnr_y_db\n0,100.000000\n1,100.000000\nmean,100.000000\n");
}

TEST_CASE("chroma planes follow the frame copy") {
    const int w = 8, h = 8, n = 3;
    std::vector<uint8_t> raw;
    for (int t = 0; t < n; ++t) {
        for (int i = 0; i < w * h; ++i)
            raw.push_back(static_cast<uint8_t>(t));
        for (int i = 0; i < w * h / 4; ++i)
            raw.push_back(static_cast<uint8_t>(100 + t));
        for (int i = 0; i < w * h / 4; ++i)
            raw.push_back(static_cast<uint8_t>(200 + t));
    }
    const std::string path = write_temp(raw, "chroma.yuv");
    const FrameSequence seq = load_frames(path, w, h, n, /*with_chroma=*/true);
    std::remove(path.c_str());
    REQUIRE(seq.has_chroma);
    const FrameSequence out = conceal(seq, {2}, ReferenceStructure::prev_frame(n));
    CHECK(out.cb[2] == seq.cb[1]);
    CHECK(out.cr[2] == seq.cr[1]);
}
