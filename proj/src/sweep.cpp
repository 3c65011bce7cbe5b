#include "lsmimo/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "lsmimo/detectors.hpp"
#include "lsmimo/errors.hpp"
#include "lsmimo/throughput.hpp"

namespace lsmimo {

namespace {

// Stream tags: every Monte Carlo draw is keyed (seed, tag, a, b) so trials
// are reproducible no matter how they are scheduled.
constexpr uint64_t kTagBerTrial = 1;
constexpr uint64_t kTagVideoRep = 2;
constexpr uint64_t kTagThroughputRep = 3;
constexpr uint64_t kTagNaluPayload = 4;
constexpr uint64_t kTagNaluSize = 5;
constexpr uint64_t kTagUserStream = 6;

void parallel_for(long begin, long end, int workers, const std::function<void(long)>& fn) {
    const long n = end - begin;
    if (n <= 0)
        return;
    if (workers <= 1 || n == 1) {
        for (long i = begin; i < end; ++i)
            fn(i);
        return;
    }
    std::atomic<long> next{begin};
    std::mutex err_mutex;
    std::exception_ptr err;
    auto body = [&] {
        for (;;) {
            const long i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= end)
                return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lock(err_mutex);
                if (!err)
                    err = std::current_exception();
                next.store(end, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int w = static_cast<int>(std::min<long>(workers, n));
    pool.reserve(w);
    for (int t = 0; t < w; ++t)
        pool.emplace_back(body);
    for (auto& th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

std::string fmt_double(double v) {
    if (std::isnan(v))
        return "";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct TrialOut {
    long bit_errors = 0;
    long bits = 0;
    long uses = 0;
};

// One uncoded channel use: nt users, one 4-QAM symbol each, ZF detection.
TrialOut ls_trial(const SystemConfig& cfg, const Constellation& c, double sigma2, Rng& rng) {
    const int nb = c.bits_per_symbol();
    const BitVec bits = rng.next_bits(static_cast<size_t>(cfg.nt) * nb);
    const CVec s = modulate(bits, c, cfg.nt)[0];
    const ChannelMatrix h = sample_channel(cfg.nr, cfg.nt, rng);
    const CVec n = sample_noise(cfg.nr, sigma2, rng);
    const CVec y = apply_channel(h, s, n);
    const DetectResult det = zf_detect(h, y, c);
    TrialOut out;
    out.bits = static_cast<long>(bits.size());
    out.uses = 1;
    out.bit_errors =
        det.singular_channel ? out.bits : hamming_distance(bits, det.bits);
    return out;
}

// One coded codeword per user: encode, ML-detect every use, Viterbi-decode.
TrialOut coded_trial(const SystemConfig& cfg, const Constellation& c, const TrellisCode& code,
                     double sigma2, Rng& rng) {
    std::vector<BitVec> msgs(cfg.nt);
    for (auto& m : msgs)
        m = rng.next_bits(static_cast<size_t>(cfg.message_bits));
    std::vector<BitVec> coded(cfg.nt);
    for (int u = 0; u < cfg.nt; ++u)
        coded[u] = conv_encode(msgs[u], code);

    const bool soft = cfg.decoder_input == DecoderInputKind::Soft;
    const ChannelPass pass = pass_through_channel(coded, cfg, c, sigma2, soft, rng);

    TrialOut out;
    out.uses = pass.uses;
    for (int u = 0; u < cfg.nt; ++u) {
        const DecoderInput in = soft ? DecoderInput::from_llrs(pass.llr[u])
                                     : DecoderInput::from_hard_bits(pass.hard[u]);
        const BitVec decoded = viterbi_decode(in, code);
        out.bit_errors += hamming_distance(msgs[u], decoded);
        out.bits += static_cast<long>(msgs[u].size());
    }
    return out;
}

struct PacketChainTotals {
    long nb_ppr = 0;
    long nb_total = 0;
    long payload_bit_errors = 0;
    long uses = 0;
    double psnr_sum = 0.0;  // video only
    RecoveryReport trace;   // rep 0 only, when tracing
};

}  // namespace

BinomialCi wilson95(long successes, long total) {
    if (total <= 0)
        return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double z2 = z * z;
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(successes) / n;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ChannelPass pass_through_channel(const std::vector<BitVec>& streams, const SystemConfig& cfg,
                                 const Constellation& c, double sigma2, bool want_llr, Rng& rng) {
    if (static_cast<int>(streams.size()) != cfg.nt)
        throw DimensionError("pass_through_channel: expected one stream per user");
    const size_t len = streams[0].size();
    for (const auto& s : streams)
        if (s.size() != len)
            throw FramingError("pass_through_channel: streams must have equal length");

    const int nb = c.bits_per_symbol();
    const long uses = static_cast<long>((len + nb - 1) / nb);

    // Round-robin framing: channel use k carries bits [k*nb, k*nb+nb) of
    // every user, user i on antenna i; zero filler past the stream end.
    BitVec flat(static_cast<size_t>(uses) * cfg.nt * nb, 0);
    for (int u = 0; u < cfg.nt; ++u) {
        const BitVec& s = streams[u];
        for (size_t i = 0; i < len; ++i) {
            const size_t k = i / nb, b = i % nb;
            flat[(k * cfg.nt + u) * nb + b] = s[i];
        }
    }
    const std::vector<CVec> symbols = modulate(flat, c, cfg.nt);

    ChannelPass out;
    out.uses = uses;
    out.hard.assign(cfg.nt, BitVec());
    for (auto& h : out.hard)
        h.reserve(len);
    if (want_llr) {
        out.llr.assign(cfg.nt, {});
        for (auto& l : out.llr)
            l.reserve(len);
    }

    const DetectorConfig det = cfg.detector_config();
    const bool use_ml = det.kind == DetectorKind::ML;
    if (want_llr && !use_ml)
        throw ParameterError("pass_through_channel: soft outputs need the ML demapper");
    for (long k = 0; k < uses; ++k) {
        const ChannelMatrix h = sample_channel(cfg.nr, cfg.nt, rng);
        const CVec n = sample_noise(cfg.nr, sigma2, rng);
        const CVec y = apply_channel(h, symbols[k], n);

        BitVec det_bits;
        const double* llr = nullptr;
        SoftDemapResult soft;
        bool all_erroneous = false;
        if (use_ml) {
            if (want_llr) {
                soft = soft_bit_metrics(y, h, c, sigma2, det.enum_cap);
                det_bits = soft.ml_bits;
                llr = soft.llr.data();
            } else {
                det_bits = ml_detect(h, y, c, det.enum_cap).bits;
            }
        } else {
            const DetectResult r = zf_detect(h, y, c);
            det_bits = r.bits;
            if (r.singular_channel) {
                ++out.singular_uses;
                all_erroneous = true;  // flagged detection failure
            }
        }

        for (int u = 0; u < cfg.nt; ++u) {
            for (int b = 0; b < nb; ++b) {
                const size_t pos = static_cast<size_t>(k) * nb + b;
                if (pos >= len)
                    break;  // filler
                const size_t fi = (static_cast<size_t>(k) * cfg.nt + u) * nb + b;
                out.hard[u].push_back(det_bits[static_cast<size_t>(u) * nb + b]);
                out.bit_errors += all_erroneous
                                      ? 1
                                      : (det_bits[static_cast<size_t>(u) * nb + b] ^ flat[fi]) & 1;
                if (want_llr)
                    out.llr[u].push_back(llr[static_cast<size_t>(u) * nb + b]);
            }
        }
    }
    return out;
}

std::vector<BitVec> transmit_block(const TransmissionBlock& block, const SystemConfig& cfg,
                                   const Constellation& c, double sigma2, Rng& rng,
                                   long* uses_out) {
    std::vector<BitVec> wire(cfg.nt);
    for (int u = 0; u < cfg.nt; ++u)
        wire[u] = block.wire_bits(u);

    if (cfg.system == SystemKind::LsZfUncoded) {
        ChannelPass pass = pass_through_channel(wire, cfg, c, sigma2, /*want_llr=*/false, rng);
        if (uses_out)
            *uses_out = pass.uses;
        return std::move(pass.hard);
    }

    // Benchmark: channel code each user's aligned packet, then ML + Viterbi.
    const TrellisCode code(cfg.codec_mode);
    std::vector<BitVec> coded(cfg.nt);
    for (int u = 0; u < cfg.nt; ++u)
        coded[u] = conv_encode(wire[u], code);
    const bool soft = cfg.decoder_input == DecoderInputKind::Soft;
    const ChannelPass pass = pass_through_channel(coded, cfg, c, sigma2, soft, rng);
    if (uses_out)
        *uses_out = pass.uses;

    std::vector<BitVec> received(cfg.nt);
    for (int u = 0; u < cfg.nt; ++u) {
        const DecoderInput in = soft ? DecoderInput::from_llrs(pass.llr[u])
                                     : DecoderInput::from_hard_bits(pass.hard[u]);
        BitVec decoded = viterbi_decode(in, code);
        decoded.resize(wire[u].size());
        received[u] = std::move(decoded);
    }
    return received;
}

VideoSetup make_video_setup(const SystemConfig& cfg) {
    VideoSetup setup;
    setup.constellation = Constellation::qam4();
    if (cfg.video_source == "synthetic")
        setup.frames = synthetic_gradient(cfg.video_width, cfg.video_height, cfg.video_frames);
    else
        setup.frames = load_frames(cfg.video_source, cfg.video_width, cfg.video_height,
                                   cfg.video_frames);
    setup.frames.fps = cfg.video_fps;
    setup.refs = cfg.ref_mode == RefMode::PrevFrame
                     ? ReferenceStructure::prev_frame(cfg.video_frames, cfg.dpb_capacity)
                     : ReferenceStructure::intra_period(cfg.video_frames, cfg.intra_period,
                                                        cfg.dpb_capacity);

    // One NALU per picture per user; the bit-stream content is fixed for the
    // whole sweep, only the channel changes between repetitions.
    setup.blocks.reserve(cfg.video_frames);
    for (int t = 0; t < cfg.video_frames; ++t) {
        std::vector<Packet> per_user;
        per_user.reserve(cfg.nt);
        for (int u = 0; u < cfg.nt; ++u) {
            const long jitter = cfg.nalu_jitter_bits > 0
                                    ? static_cast<long>(Rng::stream(cfg.seed, kTagNaluSize, u, t)
                                                            .next_below(cfg.nalu_jitter_bits + 1))
                                    : 0;
            Packet p;
            p.user_id = u;
            p.seq_no = t;
            p.payload = Rng::stream(cfg.seed, kTagNaluPayload, u, t)
                            .next_bits(static_cast<size_t>(cfg.nalu_bits + jitter));
            per_user.push_back(crc_attach(std::move(p)));
        }
        setup.blocks.push_back(align_block(std::move(per_user), cfg.nt));
    }
    return setup;
}

VideoRepOutcome run_video_repetition(const SystemConfig& cfg, const VideoSetup& setup,
                                     double sigma2, Rng& rng) {
    VideoRepOutcome out;
    out.lost_frames.assign(cfg.nt, {});

    for (const TransmissionBlock& block : setup.blocks) {
        long uses = 0;
        std::vector<BitVec> received =
            transmit_block(block, cfg, setup.constellation, sigma2, rng, &uses);
        out.uses += uses;

        // Fault injection: flipping a payload bit makes the CRC fail honestly.
        for (const auto& [fu, fs] : cfg.force_drop)
            if (fu >= 0 && fu < cfg.nt && fs == block.packets[fu].seq_no &&
                !received[fu].empty())
                received[fu][0] ^= 1;

        for (int u = 0; u < cfg.nt; ++u) {
            const Packet& tx = block.packets[u];
            const size_t len = static_cast<size_t>(tx.payload_len_bits);
            for (size_t i = 0; i < len; ++i)
                out.payload_bit_errors += (received[u][i] ^ tx.payload[i]) & 1;
        }
        recover_block(block, received, out.report, nullptr);
    }

    for (const auto& [user, seq] : out.report.loss_map)
        out.lost_frames[user].insert(static_cast<int>(seq));

    if (setup.frames.frame_count() > 0) {
        double psnr_sum = 0.0;
        for (int u = 0; u < cfg.nt; ++u) {
            if (out.lost_frames[u].size() == setup.frames.frame_count()) {
                // Nothing survived for this user; no donor frame exists.
                continue;  // counts as 0 dB
            }
            const FrameSequence concealed =
                conceal(setup.frames, out.lost_frames[u], setup.refs);
            psnr_sum += psnr_y(setup.frames, concealed, cfg.psnr_cap_db).mean_db;
        }
        out.mean_psnr_db = psnr_sum / cfg.nt;
    }
    return out;
}

namespace {

SweepResult run_packet_chain_sweep(const SystemConfig& cfg, bool video) {
    const double t0 = now_seconds();

    VideoSetup setup;
    if (video) {
        setup = make_video_setup(cfg);
    } else {
        // Throughput chain: per-user random streams through the segmenter.
        setup.constellation = Constellation::qam4();
        std::vector<std::vector<Packet>> per_user(cfg.nt);
        size_t blocks = 0;
        for (int u = 0; u < cfg.nt; ++u) {
            const BitVec stream = Rng::stream(cfg.seed, kTagUserStream, u)
                                      .next_bits(static_cast<size_t>(cfg.stream_bits));
            auto packets = segment(stream, cfg.max_payload_bits, u);
            for (auto& p : packets)
                p = crc_attach(std::move(p));
            blocks = std::max(blocks, packets.size());
            per_user[u] = std::move(packets);
        }
        for (size_t t = 0; t < blocks; ++t) {
            std::vector<Packet> row;
            for (int u = 0; u < cfg.nt; ++u) {
                if (t < per_user[u].size())
                    row.push_back(per_user[u][t]);
            }
            if (static_cast<int>(row.size()) == cfg.nt)
                setup.blocks.push_back(align_block(std::move(row), cfg.nt));
        }
    }

    const double c_raw = raw_throughput(cfg.lte_params());
    const uint64_t tag = video ? kTagVideoRep : kTagThroughputRep;
    const double rate = cfg.r_c.value();

    SweepResult result;
    RecoveryReport trace;
    for (size_t k = 0; k < cfg.snr_db.size(); ++k) {
        const double sigma2 = ebn0_to_sigma2(cfg.snr_db[k], cfg.nt, cfg.m_b, cfg.r_c);
        const long reps = cfg.repetitions;
        std::vector<VideoRepOutcome> outs(reps);
        parallel_for(0, reps, cfg.workers, [&](long r) {
            Rng rng = Rng::stream(cfg.seed, tag, k, static_cast<uint64_t>(r));
            outs[r] = run_video_repetition(cfg, setup, sigma2, rng);
        });

        PacketChainTotals tot;
        for (long r = 0; r < reps; ++r) {
            tot.nb_ppr += outs[r].report.nb_ppr;
            tot.nb_total += outs[r].report.nb_total;
            tot.payload_bit_errors += outs[r].payload_bit_errors;
            tot.uses += outs[r].uses;
            tot.psnr_sum += outs[r].mean_psnr_db;
        }
        if (!cfg.packet_trace_path.empty() && reps > 0) {
            trace.packets.insert(trace.packets.end(), outs[0].report.packets.begin(),
                                 outs[0].report.packets.end());
        }

        SweepRow row;
        row.snr_db = cfg.snr_db[k];
        row.seed = cfg.seed;
        row.trials = reps;
        row.ber = static_cast<double>(tot.payload_bit_errors) / static_cast<double>(tot.nb_total);
        const BinomialCi ci = wilson95(tot.payload_bit_errors, tot.nb_total);
        row.ber_ci_low = ci.low;
        row.ber_ci_high = ci.high;
        row.ber_ppr = static_cast<double>(tot.nb_ppr) / static_cast<double>(tot.nb_total);
        if (video)
            row.psnr_mean_db = tot.psnr_sum / static_cast<double>(reps);
        // Effective throughput: Eq.-style product, derated by the framing
        // efficiency (CRC, padding, tail and filler consume capacity that
        // carries no information bits).
        const double capacity_bits =
            static_cast<double>(tot.uses) * cfg.nt * cfg.m_b * rate;
        const double efficiency = static_cast<double>(tot.nb_total) / capacity_bits;
        row.c_eff_bps = effective_throughput(c_raw, row.ber_ppr) * efficiency;
        result.rows.push_back(row);
    }

    if (!cfg.packet_trace_path.empty()) {
        std::ofstream os(cfg.packet_trace_path);
        if (!os)
            throw FormatError("cannot write packet trace: " + cfg.packet_trace_path);
        write_packet_trace(trace, os);
    }
    result.wall_seconds = now_seconds() - t0;
    return result;
}

}  // namespace

SweepResult run_ber_sweep(const SystemConfig& cfg) {
    const double t0 = now_seconds();
    const Constellation c = Constellation::qam4();
    const bool coded = cfg.system == SystemKind::BenchmarkMlCoded;
    const TrellisCode code(cfg.codec_mode);

    const long uses_per_trial =
        coded ? (3 * (cfg.message_bits + TrellisCode::kTailBits) + cfg.m_b - 1) / cfg.m_b : 1;
    const long trials_per_block = std::max<long>(1, 8192 / uses_per_trial);

    SweepResult result;
    for (size_t k = 0; k < cfg.snr_db.size(); ++k) {
        const double sigma2 = ebn0_to_sigma2(cfg.snr_db[k], cfg.nt, cfg.m_b, cfg.r_c);
        long errors = 0, bits = 0, uses = 0, trial = 0;
        // Fixed-size blocks keep the stopping decision independent of the
        // worker count.
        while (uses < cfg.max_channel_uses && errors < cfg.target_error_events) {
            const long n = trials_per_block;
            std::vector<TrialOut> outs(n);
            parallel_for(0, n, cfg.workers, [&](long i) {
                Rng rng = Rng::stream(cfg.seed, kTagBerTrial, k, static_cast<uint64_t>(trial + i));
                outs[i] = coded ? coded_trial(cfg, c, code, sigma2, rng)
                                : ls_trial(cfg, c, sigma2, rng);
            });
            for (const TrialOut& o : outs) {
                errors += o.bit_errors;
                bits += o.bits;
                uses += o.uses;
            }
            trial += n;
        }
        SweepRow row;
        row.snr_db = cfg.snr_db[k];
        row.seed = cfg.seed;
        row.trials = uses;
        row.ber = static_cast<double>(errors) / static_cast<double>(bits);
        const BinomialCi ci = wilson95(errors, bits);
        row.ber_ci_low = ci.low;
        row.ber_ci_high = ci.high;
        result.rows.push_back(row);
    }
    result.wall_seconds = now_seconds() - t0;
    return result;
}

SweepResult run_video_sweep(const SystemConfig& cfg) {
    if (cfg.video_source.empty())
        throw ConfigError("video_source: missing video source");
    return run_packet_chain_sweep(cfg, /*video=*/true);
}

SweepResult run_throughput_sweep(const SystemConfig& cfg) {
    return run_packet_chain_sweep(cfg, /*video=*/false);
}

std::string sweep_csv(const SweepResult& r) {
    std::ostringstream os;
    os << "snr_db,ber,ber_ci_low,ber_ci_high,ber_ppr,psnr_mean_db,c_eff_bps,trials,seed\n";
    for (const SweepRow& row : r.rows) {
        os << fmt_double(row.snr_db) << ',' << fmt_double(row.ber) << ','
           << fmt_double(row.ber_ci_low) << ',' << fmt_double(row.ber_ci_high) << ','
           << fmt_double(row.ber_ppr) << ',' << fmt_double(row.psnr_mean_db) << ','
           << fmt_double(row.c_eff_bps) << ',' << row.trials << ',' << row.seed << '\n';
    }
    return os.str();
}

void write_sweep_csv(const SweepResult& r, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw FormatError("cannot write CSV: " + path);
    os << sweep_csv(r);
}

}  // namespace lsmimo
