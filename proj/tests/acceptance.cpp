// Acceptance suite: one pass/fail line per criterion, run scales as stated.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>

#include "lsmimo/config.hpp"
#include "lsmimo/detectors.hpp"
#include "lsmimo/rsc.hpp"
#include "lsmimo/sweep.hpp"
#include "lsmimo/throughput.hpp"

using namespace lsmimo;

namespace {

int g_failures = 0;

void report(int idx, const char* tag, bool pass, const std::string& what) {
    std::printf("[%s] criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", idx, tag, what.c_str());
    if (!pass)
        ++g_failures;
}

void detail(const std::string& s) {
    std::printf("    %s\n", s.c_str());
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

SystemConfig cfg_from(const std::string& text) {
    std::vector<ConfigIssue> issues;
    SystemConfig cfg = parse_config_text(text, issues);
    if (has_errors(issues)) {
        std::fprintf(stderr, "acceptance config broken:\n%s\n", text.c_str());
        std::exit(3);
    }
    return cfg;
}

SweepRow run_one_point(const std::string& text) {
    const SystemConfig cfg = cfg_from(text);
    const SweepResult r = run_ber_sweep(cfg);
    return r.rows.at(0);
}

std::string ls_cfg(int nt, double snr_db, long uses) {
    return fmt(
        "system = ls_zf_uncoded\nnr = 40\nnt = %d\nsnr_db = %g\n"
        "max_channel_uses = %ld\ntarget_error_events = 1000000000\nseed = 2026\n",
        nt, snr_db, uses);
}

std::string bench_cfg(double snr_db, long uses) {
    return fmt(
        "system = benchmark_ml_coded\nsnr_db = %g\nmax_channel_uses = %ld\n"
        "message_bits = 512\ntarget_error_events = 1000000000\nseed = 2026\n",
        snr_db, uses);
}

bool ci_disjoint_below(const SweepRow& lo, const SweepRow& hi) {
    return lo.ber < hi.ber && lo.ber_ci_high < hi.ber_ci_low;
}

// ---------------------------------------------------------------- criterion 1

void criterion1() {
    const double ls = raw_throughput(LteParams::table1_ls());
    const double b = raw_throughput(LteParams::table1_benchmark());
    const bool pass = ls == 134400000.0 && b == 44800000.0;
    report(1, "throughput constants", pass,
           fmt("C_raw,LS = %.1f Mbps, C_raw,B = %.1f Mbps (exact)", ls / 1e6, b / 1e6));
}

// ---------------------------------------------------------------- criterion 2

void criterion2() {
    const long uses = 100000;
    const SweepRow r2 = run_one_point(ls_cfg(2, 6.0, uses));
    const SweepRow r4 = run_one_point(ls_cfg(4, 6.0, uses));
    const SweepRow r6 = run_one_point(ls_cfg(6, 6.0, uses));
    const SweepRow rb = run_one_point(bench_cfg(6.0, uses));

    const bool c_2lt4 = ci_disjoint_below(r2, r4);
    const bool c_4ltb = ci_disjoint_below(r4, rb);
    const bool c_6gt4 = r6.ber > r4.ber;
    const bool pass = c_2lt4 && c_4ltb && c_6gt4;
    report(2, "Fig.-1 ordering at 6 dB", pass,
           fmt("40x2 < 40x4 disjoint: %s, 40x4 < 4x4-coded disjoint: %s, 40x6 > 40x4: %s",
               c_2lt4 ? "yes" : "no", c_4ltb ? "yes" : "no", c_6gt4 ? "yes" : "no"));
    detail(fmt("BER(40x2)=%.3g [%.2g,%.2g]  BER(40x4)=%.3g [%.2g,%.2g]", r2.ber, r2.ber_ci_low,
               r2.ber_ci_high, r4.ber, r4.ber_ci_low, r4.ber_ci_high));
    detail(fmt("BER(40x6)=%.3g [%.2g,%.2g]  BER(4x4 ML+Viterbi)=%.3g [%.2g,%.2g]", r6.ber,
               r6.ber_ci_low, r6.ber_ci_high, rb.ber, rb.ber_ci_low, rb.ber_ci_high));
    detail(fmt("channel uses per curve: %ld / %ld / %ld / %ld", r2.trials, r4.trials, r6.trials,
               rb.trials));
    if (!pass) {
        detail("note: under the unit-total-power Eb/N0 mapping used throughout, the 40xNt");
        detail("ZF post-detection SNR carries diversity order Nr-Nt+1 (~37), so every curve");
        detail("is error-free at 6 dB; the ordering is only measurable at lower Eb/N0.");
        const SweepRow s2 = run_one_point(ls_cfg(2, -8.0, 800000));
        const SweepRow s4 = run_one_point(ls_cfg(4, -8.0, 800000));
        const SweepRow s6 = run_one_point(ls_cfg(6, -8.0, 800000));
        const SweepRow sb = run_one_point(bench_cfg(-8.0, uses));
        detail(fmt("supplementary (not the criterion) at -8 dB: BER(40x2)=%.3g < BER(40x4)=%.3g"
                   " (disjoint: %s),",
                   s2.ber, s4.ber, ci_disjoint_below(s2, s4) ? "yes" : "no"));
        detail(fmt("BER(40x6)=%.3g > BER(40x4): %s, BER(4x4 coded)=%.3g worst (disjoint: %s)",
                   s6.ber, s6.ber > s4.ber ? "yes" : "no", sb.ber,
                   ci_disjoint_below(s4, sb) ? "yes" : "no"));
    }
}

// ---------------------------------------------------------------- criterion 3

// Independent exhaustive search, plain nested loops.
BitVec oracle_ml_2(const ChannelMatrix& h, const CVec& y, const Constellation& c,
                   double* metric_out) {
    const double scale = 1.0 / std::sqrt(2.0);
    double best = 1e300;
    unsigned bl0 = 0, bl1 = 0;
    for (unsigned l0 = 0; l0 < 4; ++l0)
        for (unsigned l1 = 0; l1 < 4; ++l1) {
            double d = 0.0;
            for (int r = 0; r < h.nr; ++r)
                d += std::norm(y[r] -
                               (h.at(r, 0) * c.points[l0] * scale +
                                h.at(r, 1) * c.points[l1] * scale));
            if (d < best) {
                best = d;
                bl0 = l0;
                bl1 = l1;
            }
        }
    *metric_out = best;
    return {static_cast<uint8_t>((bl0 >> 1) & 1), static_cast<uint8_t>(bl0 & 1),
            static_cast<uint8_t>((bl1 >> 1) & 1), static_cast<uint8_t>(bl1 & 1)};
}

void criterion3() {
    Rng rng = Rng::from_seed(303);
    const Constellation c = Constellation::qam4();
    int mismatches = 0, metric_violations = 0;
    for (int t = 0; t < 1000; ++t) {
        const ChannelMatrix h = sample_channel(2, 2, rng);
        const CVec y{rng.next_cn(1.0), rng.next_cn(1.0)};
        double oracle_metric = 0.0;
        const BitVec oracle_bits = oracle_ml_2(h, y, c, &oracle_metric);
        const DetectResult ml = ml_detect(h, y, c);
        const DetectResult zf = zf_detect(h, y, c);
        mismatches += ml.bits != oracle_bits;
        if (!zf.singular_channel && ml.metric > zf.metric + 1e-12)
            ++metric_violations;
    }
    const bool pass = mismatches == 0 && metric_violations == 0;
    report(3, "detector oracle equivalence", pass,
           fmt("1000 random 4-QAM Nt=2 instances: %d oracle mismatches, %d ML>ZF metric "
               "violations",
               mismatches, metric_violations));
}

// ---------------------------------------------------------------- criterion 4

void criterion4() {
    const TrellisCode code;
    Rng rng = Rng::from_seed(304);
    int roundtrip_failures = 0;
    for (int t = 0; t < 1000; ++t) {
        const BitVec msg = rng.next_bits(200);
        BitVec coded = conv_encode(msg, code);
        std::vector<double> llr(coded.size());
        for (size_t i = 0; i < coded.size(); ++i)
            llr[i] = coded[i] ? -6.0 : 6.0;
        roundtrip_failures += viterbi_decode(DecoderInput::from_llrs(llr), code) != msg;
    }

    // BPSK over AWGN at Eb/N0 = 4 dB, same energy per information bit.
    const double s2_unc = ebn0_to_sigma2(4.0, 1, 1, {1, 1});
    const double s2_cod = ebn0_to_sigma2(4.0, 1, 1, {1, 3});
    const long blocks = 200, msg_bits = 5000;  // 1e6 information bits
    long unc_err = 0, cod_err = 0, total = 0;
    for (long b = 0; b < blocks; ++b) {
        const BitVec msg = rng.next_bits(msg_bits);
        for (uint8_t bit : msg) {
            const double y = (bit ? -1.0 : 1.0) + rng.next_gaussian() * std::sqrt(s2_unc);
            unc_err += (y < 0.0) != (bit != 0);
        }
        const BitVec coded = conv_encode(msg, code);
        std::vector<double> llr(coded.size());
        for (size_t i = 0; i < coded.size(); ++i) {
            const double y = (coded[i] ? -1.0 : 1.0) + rng.next_gaussian() * std::sqrt(s2_cod);
            llr[i] = 2.0 * y / s2_cod;
        }
        cod_err += hamming_distance(msg, viterbi_decode(DecoderInput::from_llrs(llr), code));
        total += msg_bits;
    }
    const double unc_ber = static_cast<double>(unc_err) / total;
    const double cod_ber = static_cast<double>(cod_err) / total;
    const bool pass = roundtrip_failures == 0 && cod_ber * 10.0 < unc_ber;
    report(4, "codec round trip and gain", pass,
           fmt("%d/1000 round-trip failures; BPSK/AWGN 4 dB over %ld bits: uncoded BER %.3g, "
               "coded BER %.3g (%.0fx)",
               roundtrip_failures, total, unc_ber, cod_ber,
               cod_err ? unc_ber / cod_ber : INFINITY));
}

// ---------------------------------------------------------------- criterion 5

void criterion5() {
    Rng rng = Rng::from_seed(305);
    const long total_bits = 10000000;
    const BitVec stream = rng.next_bits(total_bits);
    auto packets = segment(stream, 12000, 0);
    std::vector<TransmissionBlock> blocks;
    std::vector<std::vector<BitVec>> rx;
    blocks.reserve(packets.size());
    for (auto& p : packets) {
        blocks.push_back(align_block({crc_attach(std::move(p))}, 1));
        rx.push_back({blocks.back().wire_bits(0)});  // noiseless channel
    }
    RecoveredStreams streams;
    const RecoveryReport rep = recover(blocks, rx, &streams);
    const double c_raw = raw_throughput(LteParams::table1_ls());
    const double c_eff = effective_throughput(c_raw, ber_ppr(rep));
    const bool pass = streams.per_user[0] == stream && rep.nb_ppr == 0 &&
                      rep.nb_total == total_bits && c_eff == c_raw;
    report(5, "pipeline losslessness", pass,
           fmt("10^7 bits through segment/crc/pad/recover: %s, N_b,PPR = %ld, C_eff = C_raw: %s",
               streams.per_user[0] == stream ? "bit-exact" : "MISMATCH", rep.nb_ppr,
               c_eff == c_raw ? "exact" : "off"));
}

// ---------------------------------------------------------------- criterion 6

void criterion6() {
    const char* grid = "0,2,4,6,8,10,12,14,16";
    const SystemConfig ls = cfg_from(fmt(
        "system = ls_zf_uncoded\nnr = 40\nnt = 4\nsnr_db = %s\nrepetitions = 4\n"
        "stream_bits = 24000\nmax_payload_bits = 2000\nseed = 2026\n",
        grid));
    const SystemConfig bench = cfg_from(fmt(
        "system = benchmark_ml_coded\nsnr_db = %s\nrepetitions = 4\n"
        "stream_bits = 24000\nmax_payload_bits = 2000\nseed = 2026\n",
        grid));
    const SweepResult rls = run_throughput_sweep(ls);
    const SweepResult rb = run_throughput_sweep(bench);
    const double bound_ls = raw_throughput(ls.lte_params());
    const double bound_b = raw_throughput(bench.lte_params());

    int qualifying = 0, ratio_ok = 0;
    bool within_bounds = true;
    double best_ls = 0.0, best_b = 0.0;
    for (size_t i = 0; i < rls.rows.size(); ++i) {
        within_bounds = within_bounds && rls.rows[i].c_eff_bps <= bound_ls &&
                        rb.rows[i].c_eff_bps <= bound_b;
        best_ls = std::max(best_ls, rls.rows[i].c_eff_bps);
        best_b = std::max(best_b, rb.rows[i].c_eff_bps);
        if (rls.rows[i].ber_ppr < 0.1 && rb.rows[i].ber_ppr < 0.1) {
            ++qualifying;
            ratio_ok += rls.rows[i].c_eff_bps >= 2.0 * rb.rows[i].c_eff_bps;
        }
    }
    const bool approach = best_ls > 0.9 * bound_ls && best_b > 0.9 * bound_b;
    const bool pass = qualifying >= 3 && ratio_ok == qualifying && within_bounds && approach;
    report(6, "effective-throughput dominance", pass,
           fmt("%d/%d qualifying SNR points with C_eff(LS) >= 2x C_eff(benchmark); bounds "
               "respected: %s",
               ratio_ok, qualifying, within_bounds ? "yes" : "no"));
    detail(fmt("peak C_eff: LS %.1f of %.1f Mbps, benchmark %.1f of %.1f Mbps", best_ls / 1e6,
               bound_ls / 1e6, best_b / 1e6, bound_b / 1e6));
}

// ---------------------------------------------------------------- criterion 7

std::string video_cfg(const char* system, double snr_db, int reps) {
    return fmt(
        "system = %s\nsnr_db = %g\nrepetitions = %d\nvideo_frames = 12\n"
        "video_width = 32\nvideo_height = 32\nnalu_bits = 1500\nseed = 2026\n%s",
        system, snr_db, reps, std::string(system) == "ls_zf_uncoded" ? "nr = 40\nnt = 4\n" : "");
}

void criterion7() {
    // (a) error-free transmission reaches the PSNR cap
    const SweepResult clean = run_video_sweep(cfg_from(video_cfg("ls_zf_uncoded", 60.0, 2)));
    const bool a_pass = clean.rows[0].psnr_mean_db == 100.0 && clean.rows[0].ber_ppr == 0.0;

    // (b) donor-controlled nested loss sets degrade monotonically
    const FrameSequence seq = synthetic_gradient(32, 32, 12);
    const auto refs = ReferenceStructure::prev_frame(12);
    double prev = 1e300;
    bool b_pass = true;
    for (const std::set<int>& lost :
         {std::set<int>{}, std::set<int>{3}, std::set<int>{3, 7}, std::set<int>{3, 7, 8}}) {
        const double m = psnr_y(seq, lost.empty() ? seq : conceal(seq, lost, refs)).mean_db;
        b_pass = b_pass && m <= prev;
        prev = m;
    }

    // (c) LS vs benchmark PSNR at 6 dB on the same synthetic source
    const SweepResult v_ls = run_video_sweep(cfg_from(video_cfg("ls_zf_uncoded", 6.0, 50)));
    const SweepResult v_b = run_video_sweep(cfg_from(video_cfg("benchmark_ml_coded", 6.0, 50)));
    const bool c_pass = v_ls.rows[0].psnr_mean_db > v_b.rows[0].psnr_mean_db;

    // (d) concealment output is total for any loss pattern with a survivor
    Rng rng = Rng::from_seed(307);
    bool d_pass = true;
    const auto refs2 = ReferenceStructure::intra_period(12, 5, 3);
    for (int t = 0; t < 200; ++t) {
        std::set<int> lost;
        const int keep = static_cast<int>(rng.next_below(12));
        for (int i = 0; i < 12; ++i)
            if (i != keep && rng.next_below(3) > 0)
                lost.insert(i);
        const FrameSequence out = conceal(seq, lost, refs2);
        d_pass = d_pass && out.frame_count() == 12;
        for (const auto& f : out.luma)
            d_pass = d_pass && f.size() == 32 * 32;
    }

    const bool pass = a_pass && b_pass && c_pass && d_pass;
    report(7, "PSNR behavior", pass,
           fmt("(a) error-free cap: %s, (b) monotone degradation: %s, (c) PSNR(LS) > "
               "PSNR(benchmark) at 6 dB: %s, (d) concealment total: %s",
               a_pass ? "yes" : "no", b_pass ? "yes" : "no", c_pass ? "yes" : "no",
               d_pass ? "yes" : "no"));
    detail(fmt("PSNR at 6 dB: LS %.2f dB, benchmark %.2f dB", v_ls.rows[0].psnr_mean_db,
               v_b.rows[0].psnr_mean_db));
    if (!c_pass) {
        detail("note: at 6 dB under this Eb/N0 mapping both systems deliver every packet, so");
        detail("both sit at the PSNR cap and the strict inequality cannot be observed.");
        const SweepResult s_ls = run_video_sweep(cfg_from(video_cfg("ls_zf_uncoded", 0.0, 50)));
        const SweepResult s_b =
            run_video_sweep(cfg_from(video_cfg("benchmark_ml_coded", 0.0, 50)));
        detail(fmt("supplementary (not the criterion) at 0 dB: PSNR(LS) = %.2f dB > "
                   "PSNR(benchmark) = %.2f dB: %s",
                   s_ls.rows[0].psnr_mean_db, s_b.rows[0].psnr_mean_db,
                   s_ls.rows[0].psnr_mean_db > s_b.rows[0].psnr_mean_db ? "yes" : "no"));
    }
}

// ---------------------------------------------------------------- criterion 8

void criterion8() {
    const std::string base =
        "system = ls_zf_uncoded\nnr = 8\nnt = 2\nsnr_db = -6,0\n"
        "max_channel_uses = 20000\ntarget_error_events = 100000\nseed = 808\n";
    SystemConfig c1 = cfg_from(base);
    SystemConfig c3 = cfg_from(base);
    c3.workers = 3;
    const std::string a = sweep_csv(run_ber_sweep(c1));
    const std::string b = sweep_csv(run_ber_sweep(c1));
    const std::string c = sweep_csv(run_ber_sweep(c3));

    SystemConfig v1 = cfg_from(video_cfg("benchmark_ml_coded", 2.0, 4));
    SystemConfig v2 = v1;
    v2.workers = 4;
    const std::string va = sweep_csv(run_video_sweep(v1));
    const std::string vb = sweep_csv(run_video_sweep(v2));

    const bool pass = a == b && a == c && va == vb;
    report(8, "determinism", pass,
           fmt("ber sweep re-run identical: %s, across workers: %s, video sweep across "
               "workers: %s",
               a == b ? "yes" : "no", a == c ? "yes" : "no", va == vb ? "yes" : "no"));
}

}  // namespace

int main() {
    std::printf("acceptance suite: uncoded LS-MIMO ZF uplink vs rate-1/3 coded 4x4 ML uplink\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
