#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "core/fading.hpp"
#include "core/proploss.hpp"

namespace rps::linksim {

struct TrafficConfig {
    double packet_size_bits = 1024.0;
    double interarrival_s = 1.0;
    double start_time_s = 10.0;
    double horizon_s = 100.0;

    void validate() const;
};

enum class Modulation { Bpsk };

struct RadioConfig {
    double data_rate_bps = 1'000'000.0;
    double bandwidth_kHz = 20'000.0;
    double min_frequency_MHz = 905.0;
    Modulation modulation = Modulation::Bpsk;
    double ber_threshold = 1.0e-3;
    double noise_figure_dB = 0.0;

    void validate() const;
    double bandwidth_Hz() const { return bandwidth_kHz * 1000.0; }
};

enum class Verdict { Valid, Invalid, Dropped };

const char* to_string(Verdict verdict);

struct ReceptionRecord {
    double t_s = 0.0;
    double rx_power_W = 0.0;
    double rx_power_dBm = 0.0;
    double snr_dB = 0.0;
    double ber = 0.0;
    Verdict verdict = Verdict::Dropped;
};

struct LinkStats {
    std::size_t packets_sent = 0;
    std::size_t packets_received = 0;
    std::size_t packets_dropped = 0;
    double throughput_bps = 0.0;
    std::vector<ReceptionRecord> records;
};

// Deterministic received-power model evaluated at an arrival time, in W.
using PowerModel = std::function<double(double t_s)>;

std::vector<double> generate_packets(const TrafficConfig& traffic);

// Model output, optionally modulated by the fading power envelope.
double received_power_stage(double t_s, const PowerModel& model,
                            const fading::FadingProcess* fading);

// Thermal noise k_B * 290 K * B raised by the noise figure. Zero received
// power yields -infinity.
double snr_stage(double rx_power_W, const RadioConfig& radio);

// Coherent BPSK over AWGN: Q(sqrt(2 Eb/N0)) with Eb/N0 = SNR * B / R.
double ber_stage(double snr_dB, const RadioConfig& radio);

Verdict reception_decision(double ber, const RadioConfig& radio);

struct Scenario {
    TrafficConfig traffic;
    RadioConfig radio;
    PowerModel power_model;
    std::optional<fading::RicianParameters> fading;
    double wavelength_m = 0.0;  // required when fading is enabled
};

LinkStats run_link_simulation(const Scenario& scenario, std::uint64_t seed);

}  // namespace rps::linksim
