#ifndef LSMIMO_CONFIG_HPP
#define LSMIMO_CONFIG_HPP

#include <string>
#include <utility>

#include "lsmimo/detectors.hpp"
#include "lsmimo/rsc.hpp"
#include "lsmimo/throughput.hpp"
#include "lsmimo/types.hpp"

namespace lsmimo {

enum class SystemKind { LsZfUncoded, BenchmarkMlCoded };
enum class DecoderInputKind { Soft, Hard };
enum class RefMode { PrevFrame, IntraPeriod };

/// Everything a sweep needs, resolved from a key=value config file with
/// Table-1 defaults filled in.
struct SystemConfig {
    SystemKind system = SystemKind::LsZfUncoded;
    int nr = 40;
    int nt = 4;
    int m_b = 2;  // 4-QAM
    Rate r_c{1, 1};
    CodecMode codec_mode = CodecMode::Feedforward;
    DecoderInputKind decoder_input = DecoderInputKind::Soft;
    size_t ml_enum_cap = 1u << 16;

    std::vector<double> snr_db{0, 2, 4, 6, 8, 10, 12, 14, 16};
    long max_channel_uses = 200000;
    long target_error_events = 200;
    long message_bits = 512;  // info bits per codeword in coded BER sweeps
    uint64_t seed = 1;
    int workers = 1;

    long max_payload_bits = 12000;
    long stream_bits = 60000;  // per-user stream for throughput sweeps

    std::string video_source = "synthetic";
    int video_width = 64;
    int video_height = 64;
    int video_frames = 30;
    double video_fps = 30.0;
    long nalu_bits = 1500;        // base NALU payload size
    long nalu_jitter_bits = 32;   // deterministic per-packet size spread
    long repetitions = 2000;
    RefMode ref_mode = RefMode::PrevFrame;
    int intra_period = 8;
    int dpb_capacity = 16;
    double psnr_cap_db = 100.0;
    std::vector<std::pair<int, long>> force_drop;  // (user, seq) fault injection

    // Table 1 counting constants for Eq.-style throughput
    double t_ts_s = 0.5e-3;
    int m_spts = 7;
    double bandwidth_hz = 20e6;
    int m_rb = 100;
    int m_f = 12;

    std::string out_path;
    std::string packet_trace_path;

    LteParams lte_params() const;
    DetectorConfig detector_config() const;
};

struct ConfigIssue {
    std::string key;
    std::string message;
    bool is_error = true;
};

/// Parse + validate; returns the resolved config and appends one issue per
/// violated constraint. An empty file resolves to the full LS defaults.
SystemConfig parse_config_text(const std::string& text, std::vector<ConfigIssue>& issues);

/// Same, reading from a file. Unreadable file is a ConfigError.
SystemConfig validate_config(const std::string& path, std::vector<ConfigIssue>& issues);

/// Resolved key=value echo of a config, parseable back.
std::string config_echo(const SystemConfig& cfg);

bool has_errors(const std::vector<ConfigIssue>& issues);

}  // namespace lsmimo

#endif
