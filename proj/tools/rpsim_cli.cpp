// Command-line front end for the rpsim shared library. Talks to the core
// exclusively through the C API in rpsim.h.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "rpsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;

int exit_code(rps_status status) {
    switch (status) {
        case RPS_OK: return kExitOk;
        case RPS_ERR_USAGE: return kExitUsage;
        case RPS_ERR_IO: return kExitIo;
        default: return kExitDomain;
    }
}

int report(rps_status status) {
    if (status != RPS_OK) {
        std::fprintf(stderr, "error: %s\n", rps_last_error());
    }
    return exit_code(status);
}

struct CommonOptions {
    std::string config_path;
    std::string model;
    std::string profile_path;
    double tx_height = -1.0;
    double rx_height = -1.0;
    double freq_mhz = -1.0;
    std::int64_t seed = -1;
    std::string out_path;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "Scenario configuration file");
    cmd->add_option("--model", opt.model, "freespace | tworay | lostworay | tirem");
    cmd->add_option("--profile", opt.profile_path, "Elevation profile CSV (tirem)");
    cmd->add_option("--tx-height", opt.tx_height, "Transmitter antenna height, m");
    cmd->add_option("--rx-height", opt.rx_height, "Receiver antenna height, m");
    cmd->add_option("--freq-mhz", opt.freq_mhz, "Carrier frequency, MHz");
    cmd->add_option("--seed", opt.seed, "Random seed");
    cmd->add_option("--out", opt.out_path, "Output CSV path")->required();
}

// Loads the config file (when given) and layers the command-line
// overrides on top of it.
rps_status build_scenario(const CommonOptions& opt, rps_scenario** out) {
    rps_status status =
        opt.config_path.empty() ? rps_scenario_new(out) : rps_scenario_load(opt.config_path.c_str(), out);
    if (status != RPS_OK) return status;

    const auto set = [&](const char* key, const std::string& value) {
        if (status == RPS_OK && !value.empty()) {
            status = rps_scenario_set(*out, key, value.c_str());
        }
    };
    set("model", opt.model);
    set("terrain.profile", opt.profile_path);
    if (opt.tx_height >= 0.0) set("geometry.tx_height_m", std::to_string(opt.tx_height));
    if (opt.rx_height >= 0.0) set("geometry.rx_height_m", std::to_string(opt.rx_height));
    if (opt.freq_mhz >= 0.0) set("geometry.frequency_mhz", std::to_string(opt.freq_mhz));
    if (opt.seed >= 0) set("seed", std::to_string(opt.seed));
    if (status != RPS_OK) {
        rps_scenario_free(*out);
        *out = nullptr;
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Terrain-aware radio propagation and wireless-link simulator"};
    app.require_subcommand(1);

    CommonOptions sweep_opt;
    double d_min = 0.0;
    double d_max = 0.0;
    std::size_t n_points = 0;
    bool log_spacing = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Attenuation vs distance CSV");
    add_common_flags(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--d-min", d_min, "Smallest distance, m")->required();
    sweep_cmd->add_option("--d-max", d_max, "Largest distance, m")->required();
    sweep_cmd->add_option("--n-points", n_points, "Grid size")->required();
    sweep_cmd->add_flag("--log", log_spacing, "Logarithmic distance grid");

    CommonOptions run_opt;
    std::string stats_path;
    auto* run_cmd = app.add_subcommand("run", "Packet-pipeline link simulation");
    add_common_flags(run_cmd, run_opt);
    run_cmd->add_option("--stats-out", stats_path, "Summary stats CSV path");

    CommonOptions fade_opt;
    double k_factor = 0.5;
    double sigma = 1.0;
    double velocity = 1.0;
    std::int64_t offset = 0;
    double dt = 0.001;
    std::size_t n_samples = 0;
    auto* fade_cmd = app.add_subcommand("fade", "Rician fading envelope CSV");
    add_common_flags(fade_cmd, fade_opt);
    fade_cmd->add_option("--k", k_factor, "Rician K factor");
    fade_cmd->add_option("--sigma", sigma, "Scattered-component sigma");
    fade_cmd->add_option("--velocity", velocity, "Max velocity, m/s");
    fade_cmd->add_option("--offset", offset, "Envelope table offset");
    fade_cmd->add_option("--dt", dt, "Sample interval, s");
    fade_cmd->add_option("--n", n_samples, "Number of samples")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    if (sweep_cmd->parsed()) {
        rps_scenario* scenario = nullptr;
        rps_status status = build_scenario(sweep_opt, &scenario);
        if (status == RPS_OK) {
            status = rps_scenario_sweep(scenario, d_min, d_max, n_points, log_spacing ? 1 : 0,
                                        sweep_opt.out_path.c_str());
            // degenerate grids are a usage problem, not a model problem
            if (status == RPS_ERR_DOMAIN && n_points < 2) status = RPS_ERR_USAGE;
        }
        rps_scenario_free(scenario);
        return report(status);
    }

    if (run_cmd->parsed()) {
        rps_scenario* scenario = nullptr;
        rps_status status = build_scenario(run_opt, &scenario);
        rps_link_stats stats{};
        if (status == RPS_OK) {
            status = rps_scenario_run(scenario, run_opt.out_path.c_str(),
                                      stats_path.empty() ? nullptr : stats_path.c_str(), &stats);
        }
        if (status == RPS_OK) {
            std::printf("sent=%" PRIu64 " received=%" PRIu64 " dropped=%" PRIu64
                        " throughput_bps=%g\n",
                        stats.packets_sent, stats.packets_received, stats.packets_dropped,
                        stats.throughput_bps);
        }
        rps_scenario_free(scenario);
        return report(status);
    }

    // fade
    if (n_samples == 0) {
        std::fprintf(stderr, "error: --n must be at least 1\n");
        return kExitUsage;
    }
    const double freq_mhz = fade_opt.freq_mhz > 0.0 ? fade_opt.freq_mhz : 905.0;
    const double wavelength = 299792458.0 / (freq_mhz * 1.0e6);
    rps_fading* fading = nullptr;
    rps_status status =
        rps_fading_create(k_factor, sigma, velocity, wavelength, offset,
                          fade_opt.seed >= 0 ? static_cast<std::uint64_t>(fade_opt.seed) : 1,
                          &fading);
    if (status == RPS_OK) {
        status = rps_fading_write_trace(fading, dt, n_samples, fade_opt.out_path.c_str());
    }
    rps_fading_free(fading);
    return report(status);
}
