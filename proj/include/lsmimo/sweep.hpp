#ifndef LSMIMO_SWEEP_HPP
#define LSMIMO_SWEEP_HPP

#include <set>
#include <string>

#include "lsmimo/config.hpp"
#include "lsmimo/modem.hpp"
#include "lsmimo/packet.hpp"
#include "lsmimo/rng.hpp"
#include "lsmimo/types.hpp"
#include "lsmimo/video.hpp"

namespace lsmimo {

struct BinomialCi {
    double low = 0.0;
    double high = 1.0;
};

/// 95% Wilson score interval for a binomial proportion.
BinomialCi wilson95(long successes, long total);

/// One CSV row. NaN fields are emitted as empty columns.
struct SweepRow {
    double snr_db = 0.0;
    double ber = std::numeric_limits<double>::quiet_NaN();
    double ber_ci_low = std::numeric_limits<double>::quiet_NaN();
    double ber_ci_high = std::numeric_limits<double>::quiet_NaN();
    double ber_ppr = std::numeric_limits<double>::quiet_NaN();
    double psnr_mean_db = std::numeric_limits<double>::quiet_NaN();
    double c_eff_bps = std::numeric_limits<double>::quiet_NaN();
    long trials = 0;
    uint64_t seed = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double wall_seconds = 0.0;
};

/// Information-bit error rate per SNR point over independent channel uses
/// (fresh H, s, n each use). Stops at max_channel_uses or once
/// target_error_events errors have been seen, whichever comes first,
/// checked at fixed block boundaries so results do not depend on the
/// worker count.
SweepResult run_ber_sweep(const SystemConfig& cfg);

/// Packetized NALU-surrogate video chain: packetize, (encode,) transmit,
/// recover, map losses to frames, conceal, PSNR; repeated `repetitions`
/// times per SNR point.
SweepResult run_video_sweep(const SystemConfig& cfg);

/// Packetized random-stream chain reporting BER_PPR and effective
/// throughput.
SweepResult run_throughput_sweep(const SystemConfig& cfg);

std::string sweep_csv(const SweepResult& r);
void write_sweep_csv(const SweepResult& r, const std::string& path);

// ---- chain pieces, exposed for tests and fault injection ----

struct ChannelPass {
    std::vector<BitVec> hard;               // per user, detected bits
    std::vector<std::vector<double>> llr;   // per user, when requested
    long uses = 0;
    long singular_uses = 0;
    long bit_errors = 0;  // detected vs transmitted, filler excluded
};

/// Send nt equal-length bit streams through the configured detector with a
/// fresh channel realization per use. Streams are zero-filled up to a whole
/// number of uses; filler positions are dropped again on the way out.
ChannelPass pass_through_channel(const std::vector<BitVec>& streams, const SystemConfig& cfg,
                                 const Constellation& c, double sigma2, bool want_llr, Rng& rng);

/// Transmit one aligned block (conv_encode/viterbi_decode wrap the channel
/// for the benchmark system). Returns per-user received wire bits.
std::vector<BitVec> transmit_block(const TransmissionBlock& block, const SystemConfig& cfg,
                                   const Constellation& c, double sigma2, Rng& rng,
                                   long* uses_out);

struct VideoSetup {
    FrameSequence frames;  // shared source; also the PSNR reference
    ReferenceStructure refs;
    std::vector<TransmissionBlock> blocks;  // one per frame, one packet per user
    Constellation constellation;
};

VideoSetup make_video_setup(const SystemConfig& cfg);

struct VideoRepOutcome {
    RecoveryReport report;
    std::vector<std::set<int>> lost_frames;  // per user
    double mean_psnr_db = 0.0;
    long payload_bit_errors = 0;  // pre-recovery, payload regions only
    long uses = 0;
};

VideoRepOutcome run_video_repetition(const SystemConfig& cfg, const VideoSetup& setup,
                                     double sigma2, Rng& rng);

}  // namespace lsmimo

#endif
