#include "lsmimo/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lsmimo/errors.hpp"

namespace lsmimo {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_rate(const std::string& v, Rate& out) {
    int num = 0, den = 1;
    char slash = 0;
    std::istringstream is(v);
    if (!(is >> num))
        return false;
    if (is >> slash) {
        if (slash != '/' || !(is >> den))
            return false;
    }
    if (num <= 0 || den <= 0)
        return false;
    out = {num, den};
    return true;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : v) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!cur.empty())
                parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty())
        parts.push_back(cur);
    return parts;
}

}  // namespace

DetectorConfig SystemConfig::detector_config() const {
    DetectorConfig d;
    d.kind = system == SystemKind::BenchmarkMlCoded ? DetectorKind::ML : DetectorKind::ZF;
    d.enum_cap = ml_enum_cap;
    return d;
}

LteParams SystemConfig::lte_params() const {
    LteParams p;
    p.m_b = m_b;
    p.n_t = nt;
    p.n_r = nr;
    p.t_ts_s = t_ts_s;
    p.m_spts = m_spts;
    p.bandwidth_hz = bandwidth_hz;
    p.m_rb = m_rb;
    p.m_f = m_f;
    p.r_c = r_c;
    return p;
}

SystemConfig parse_config_text(const std::string& text, std::vector<ConfigIssue>& issues) {
    SystemConfig cfg;
    bool system_given = false, nr_given = false, rc_given = false;

    auto error = [&](const std::string& key, const std::string& msg) {
        issues.push_back({key, msg, true});
    };
    auto warn = [&](const std::string& key, const std::string& msg) {
        issues.push_back({key, msg, false});
    };

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            error("", "line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        auto as_long = [&](long& dst, long lo, long hi) {
            try {
                const long v = std::stol(val);
                if (v < lo || v > hi) {
                    error(key, "value out of range");
                    return;
                }
                dst = v;
            } catch (...) {
                error(key, "not an integer: " + val);
            }
        };
        auto as_int = [&](int& dst, long lo, long hi) {
            long tmp = dst;
            as_long(tmp, lo, hi);
            dst = static_cast<int>(tmp);
        };
        auto as_double = [&](double& dst, double lo) {
            try {
                const double v = std::stod(val);
                if (!(v >= lo)) {
                    error(key, "value out of range");
                    return;
                }
                dst = v;
            } catch (...) {
                error(key, "not a number: " + val);
            }
        };

        if (key == "system") {
            system_given = true;
            if (val == "ls_zf_uncoded")
                cfg.system = SystemKind::LsZfUncoded;
            else if (val == "benchmark_ml_coded")
                cfg.system = SystemKind::BenchmarkMlCoded;
            else
                error(key, "expected ls_zf_uncoded or benchmark_ml_coded");
        } else if (key == "nr") {
            nr_given = true;
            as_int(cfg.nr, 1, 4096);
        } else if (key == "nt") {
            as_int(cfg.nt, 1, 64);
        } else if (key == "M_b") {
            as_int(cfg.m_b, 1, 8);
        } else if (key == "R_c") {
            rc_given = true;
            if (!parse_rate(val, cfg.r_c))
                error(key, "expected a positive rational like 1 or 1/3");
        } else if (key == "codec_mode") {
            if (val == "feedforward")
                cfg.codec_mode = CodecMode::Feedforward;
            else if (val == "recursive")
                cfg.codec_mode = CodecMode::RecursiveSystematic;
            else
                error(key, "expected feedforward or recursive");
        } else if (key == "decoder_input") {
            if (val == "soft")
                cfg.decoder_input = DecoderInputKind::Soft;
            else if (val == "hard")
                cfg.decoder_input = DecoderInputKind::Hard;
            else
                error(key, "expected soft or hard");
        } else if (key == "ml_enum_cap") {
            long v = static_cast<long>(cfg.ml_enum_cap);
            as_long(v, 4, 1L << 30);
            cfg.ml_enum_cap = static_cast<size_t>(v);
        } else if (key == "snr_db") {
            cfg.snr_db.clear();
            for (const auto& part : split_list(val)) {
                try {
                    cfg.snr_db.push_back(std::stod(part));
                } catch (...) {
                    error(key, "not a number: " + part);
                }
            }
            if (cfg.snr_db.empty())
                error(key, "empty SNR grid");
        } else if (key == "max_channel_uses") {
            as_long(cfg.max_channel_uses, 1, 1L << 40);
        } else if (key == "target_error_events") {
            as_long(cfg.target_error_events, 1, 1L << 40);
        } else if (key == "message_bits") {
            as_long(cfg.message_bits, 1, 1L << 20);
        } else if (key == "seed") {
            try {
                cfg.seed = std::stoull(val);
            } catch (...) {
                error(key, "not an unsigned integer: " + val);
            }
        } else if (key == "workers") {
            as_int(cfg.workers, 1, 256);
        } else if (key == "max_payload_bits") {
            as_long(cfg.max_payload_bits, 1, 1L << 30);
        } else if (key == "stream_bits") {
            as_long(cfg.stream_bits, 1, 1L << 32);
        } else if (key == "video_source") {
            cfg.video_source = val;
        } else if (key == "video_width") {
            as_int(cfg.video_width, 1, 8192);
        } else if (key == "video_height") {
            as_int(cfg.video_height, 1, 8192);
        } else if (key == "video_frames") {
            as_int(cfg.video_frames, 1, 100000);
        } else if (key == "video_fps") {
            as_double(cfg.video_fps, 1e-9);
        } else if (key == "nalu_bits") {
            as_long(cfg.nalu_bits, 1, 1L << 26);
        } else if (key == "nalu_jitter_bits") {
            as_long(cfg.nalu_jitter_bits, 0, 1L << 16);
        } else if (key == "repetitions") {
            as_long(cfg.repetitions, 1, 1L << 30);
        } else if (key == "ref_mode") {
            if (val == "prev_frame")
                cfg.ref_mode = RefMode::PrevFrame;
            else if (val == "intra_period")
                cfg.ref_mode = RefMode::IntraPeriod;
            else
                error(key, "expected prev_frame or intra_period");
        } else if (key == "intra_period") {
            as_int(cfg.intra_period, 1, 100000);
        } else if (key == "dpb_capacity") {
            as_int(cfg.dpb_capacity, 1, 100000);
        } else if (key == "psnr_cap_db") {
            as_double(cfg.psnr_cap_db, 1.0);
        } else if (key == "force_drop") {
            cfg.force_drop.clear();
            for (const auto& part : split_list(val)) {
                const auto colon = part.find(':');
                bool ok = colon != std::string::npos;
                if (ok) {
                    try {
                        const int u = std::stoi(part.substr(0, colon));
                        const long s = std::stol(part.substr(colon + 1));
                        cfg.force_drop.emplace_back(u, s);
                    } catch (...) {
                        ok = false;
                    }
                }
                if (!ok)
                    error(key, "expected user:seq pairs, got " + part);
            }
        } else if (key == "T_ts") {
            as_double(cfg.t_ts_s, 1e-12);
        } else if (key == "M_spts") {
            as_int(cfg.m_spts, 1, 1000);
        } else if (key == "B") {
            as_double(cfg.bandwidth_hz, 1.0);
        } else if (key == "M_RB") {
            as_int(cfg.m_rb, 1, 100000);
        } else if (key == "M_f") {
            as_int(cfg.m_f, 1, 100000);
        } else if (key == "out") {
            cfg.out_path = val;
        } else if (key == "packet_trace") {
            cfg.packet_trace_path = val;
        } else {
            error(key, "unknown key");
        }
    }

    // Cross-field defaults: a benchmark system that did not say otherwise
    // gets the 4x4 rate-1/3 shape.
    if (system_given && cfg.system == SystemKind::BenchmarkMlCoded) {
        if (!nr_given)
            cfg.nr = cfg.nt;
        if (!rc_given)
            cfg.r_c = {1, 3};
    }

    // Invariants.
    if (cfg.nt < 1)
        error("nt", "must be >= 1");
    if (cfg.nr < cfg.nt)
        error("nr", "need nr >= nt");
    if (cfg.m_b != 2)
        error("M_b", "only 4-QAM (M_b = 2) is supported");
    if (cfg.system == SystemKind::LsZfUncoded) {
        if (cfg.r_c != Rate{1, 1})
            error("R_c", "must be 1 for ls_zf_uncoded");
        if (cfg.nr < 4 * cfg.nt)
            warn("nr", "nr >> nt violated (want nr >= 4*nt for the large-scale regime)");
    } else {
        if (!(cfg.r_c == Rate{1, 3}))
            error("R_c", "must be 1/3 for benchmark");
        if (cfg.nr != 4 || cfg.nt != 4)
            warn("nr", "benchmark is defined as a 4x4 system");
        size_t hyp = 1;
        bool over = false;
        for (int i = 0; i < cfg.nt && !over; ++i) {
            hyp *= static_cast<size_t>(1) << cfg.m_b;
            over = hyp > cfg.ml_enum_cap;
        }
        if (over)
            error("ml_enum_cap", "must be >= M^Nt for the ML detector");
    }
    return cfg;
}

SystemConfig validate_config(const std::string& path, std::vector<ConfigIssue>& issues) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), issues);
}

bool has_errors(const std::vector<ConfigIssue>& issues) {
    for (const auto& i : issues)
        if (i.is_error)
            return true;
    return false;
}

std::string config_echo(const SystemConfig& cfg) {
    std::ostringstream os;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    os << "system = "
       << (cfg.system == SystemKind::LsZfUncoded ? "ls_zf_uncoded" : "benchmark_ml_coded")
       << '\n';
    os << "nr = " << cfg.nr << '\n';
    os << "nt = " << cfg.nt << '\n';
    os << "M_b = " << cfg.m_b << '\n';
    os << "R_c = " << cfg.r_c.num;
    if (cfg.r_c.den != 1)
        os << '/' << cfg.r_c.den;
    os << '\n';
    os << "codec_mode = "
       << (cfg.codec_mode == CodecMode::Feedforward ? "feedforward" : "recursive") << '\n';
    os << "decoder_input = " << (cfg.decoder_input == DecoderInputKind::Soft ? "soft" : "hard")
       << '\n';
    os << "ml_enum_cap = " << cfg.ml_enum_cap << '\n';
    os << "snr_db = ";
    for (size_t i = 0; i < cfg.snr_db.size(); ++i)
        os << (i ? "," : "") << num(cfg.snr_db[i]);
    os << '\n';
    os << "max_channel_uses = " << cfg.max_channel_uses << '\n';
    os << "target_error_events = " << cfg.target_error_events << '\n';
    os << "message_bits = " << cfg.message_bits << '\n';
    os << "seed = " << cfg.seed << '\n';
    os << "workers = " << cfg.workers << '\n';
    os << "max_payload_bits = " << cfg.max_payload_bits << '\n';
    os << "stream_bits = " << cfg.stream_bits << '\n';
    os << "video_source = " << cfg.video_source << '\n';
    os << "video_width = " << cfg.video_width << '\n';
    os << "video_height = " << cfg.video_height << '\n';
    os << "video_frames = " << cfg.video_frames << '\n';
    os << "video_fps = " << num(cfg.video_fps) << '\n';
    os << "nalu_bits = " << cfg.nalu_bits << '\n';
    os << "nalu_jitter_bits = " << cfg.nalu_jitter_bits << '\n';
    os << "repetitions = " << cfg.repetitions << '\n';
    os << "ref_mode = " << (cfg.ref_mode == RefMode::PrevFrame ? "prev_frame" : "intra_period")
       << '\n';
    os << "intra_period = " << cfg.intra_period << '\n';
    os << "dpb_capacity = " << cfg.dpb_capacity << '\n';
    os << "psnr_cap_db = " << num(cfg.psnr_cap_db) << '\n';
    if (!cfg.force_drop.empty()) {
        os << "force_drop = ";
        for (size_t i = 0; i < cfg.force_drop.size(); ++i)
            os << (i ? "," : "") << cfg.force_drop[i].first << ':' << cfg.force_drop[i].second;
        os << '\n';
    }
    os << "T_ts = " << num(cfg.t_ts_s) << '\n';
    os << "M_spts = " << cfg.m_spts << '\n';
    os << "B = " << num(cfg.bandwidth_hz) << '\n';
    os << "M_RB = " << cfg.m_rb << '\n';
    os << "M_f = " << cfg.m_f << '\n';
    if (!cfg.out_path.empty())
        os << "out = " << cfg.out_path << '\n';
    if (!cfg.packet_trace_path.empty())
        os << "packet_trace = " << cfg.packet_trace_path << '\n';
    return os.str();
}

}  // namespace lsmimo
