// lsmimo-sim: link-level Monte Carlo driver for the uncoded large-scale
// MIMO uplink versus the convolutionally coded small-scale benchmark.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "lsmimo/config.hpp"
#include "lsmimo/errors.hpp"
#include "lsmimo/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct CliOptions {
    std::string config_path;
    std::string out_path;
    uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
};

void add_common(CLI::App* sub, CliOptions& opt) {
    sub->add_option("--config", opt.config_path, "key = value config file")->required();
    sub->add_option("--seed", opt.seed, "override the config seed");
    sub->add_option("--out", opt.out_path, "CSV output path");
    sub->add_option("--workers", opt.workers, "worker thread count override");
}

lsmimo::SystemConfig load(const CliOptions& opt, bool seed_set, bool print_issues) {
    std::vector<lsmimo::ConfigIssue> issues;
    lsmimo::SystemConfig cfg = lsmimo::validate_config(opt.config_path, issues);
    for (const auto& i : issues) {
        if (print_issues || i.is_error)
            std::cerr << (i.is_error ? "error: " : "warning: ")
                      << (i.key.empty() ? "" : i.key + ": ") << i.message << '\n';
    }
    if (lsmimo::has_errors(issues))
        throw lsmimo::ConfigError("invalid config: " + opt.config_path);
    if (seed_set)
        cfg.seed = opt.seed;
    if (opt.workers > 0)
        cfg.workers = opt.workers;
    if (!opt.out_path.empty())
        cfg.out_path = opt.out_path;
    return cfg;
}

int emit(const lsmimo::SweepResult& result, const lsmimo::SystemConfig& cfg) {
    if (cfg.out_path.empty())
        std::cout << lsmimo::sweep_csv(result);
    else
        lsmimo::write_sweep_csv(result, cfg.out_path);
    std::fprintf(stderr, "done in %.2f s (%zu SNR points)\n", result.wall_seconds,
                 result.rows.size());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-level simulator: uncoded LS-MIMO ZF uplink vs coded 4x4 ML benchmark"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* ber = app.add_subcommand("ber-sweep", "BER versus Eb/N0");
    CLI::App* video = app.add_subcommand("video-sweep", "packetized video PSNR versus Eb/N0");
    CLI::App* tput = app.add_subcommand("throughput-sweep", "effective throughput versus Eb/N0");
    CLI::App* validate = app.add_subcommand("validate", "check a config and echo the result");
    for (CLI::App* sub : {ber, video, tput, validate})
        add_common(sub, opt);

    CLI11_PARSE(app, argc, argv);
    const bool seed_set = app.get_subcommands()[0]->count("--seed") > 0;

    try {
        if (validate->parsed()) {
            std::vector<lsmimo::ConfigIssue> issues;
            lsmimo::SystemConfig cfg = lsmimo::validate_config(opt.config_path, issues);
            for (const auto& i : issues)
                std::cerr << (i.is_error ? "error: " : "warning: ")
                          << (i.key.empty() ? "" : i.key + ": ") << i.message << '\n';
            if (lsmimo::has_errors(issues))
                return kExitConfigError;
            std::cout << lsmimo::config_echo(cfg);
            return kExitOk;
        }
        const lsmimo::SystemConfig cfg = load(opt, seed_set, true);
        if (ber->parsed())
            return emit(lsmimo::run_ber_sweep(cfg), cfg);
        if (video->parsed())
            return emit(lsmimo::run_video_sweep(cfg), cfg);
        return emit(lsmimo::run_throughput_sweep(cfg), cfg);
    } catch (const lsmimo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
}
