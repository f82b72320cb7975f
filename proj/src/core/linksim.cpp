#include "core/linksim.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace rps::linksim {

namespace {
constexpr double kBoltzmann = 1.380649e-23;
constexpr double kNoiseTemperatureK = 290.0;
}  // namespace

void TrafficConfig::validate() const {
    if (!(packet_size_bits > 0.0)) throw domain_error("packet size must be positive");
    if (!(interarrival_s > 0.0)) throw domain_error("interarrival time must be positive");
    if (start_time_s < 0.0) throw domain_error("start time must be >= 0");
    // A horizon before the start time is allowed and simply emits nothing.
    if (horizon_s < 0.0) throw domain_error("horizon must be >= 0");
}

void RadioConfig::validate() const {
    if (!(data_rate_bps > 0.0)) throw domain_error("data rate must be positive");
    if (!(bandwidth_kHz > 0.0)) throw domain_error("bandwidth must be positive");
    if (!(min_frequency_MHz > 0.0)) throw domain_error("frequency must be positive");
    if (!(ber_threshold > 0.0) || ber_threshold >= 1.0) {
        throw domain_error("BER threshold must be in (0, 1)");
    }
}

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Valid: return "valid";
        case Verdict::Invalid: return "invalid";
        case Verdict::Dropped: return "dropped";
    }
    return "unknown";
}

std::vector<double> generate_packets(const TrafficConfig& traffic) {
    traffic.validate();
    std::vector<double> emissions;
    for (std::size_t i = 0;; ++i) {
        const double t = traffic.start_time_s + static_cast<double>(i) * traffic.interarrival_s;
        if (t >= traffic.horizon_s) break;
        emissions.push_back(t);
    }
    return emissions;
}

double received_power_stage(double t_s, const PowerModel& model,
                            const fading::FadingProcess* fading) {
    double power = model(t_s);
    if (fading != nullptr) {
        power *= fading->power_at(t_s);
    }
    return power;
}

double snr_stage(double rx_power_W, const RadioConfig& radio) {
    radio.validate();
    if (rx_power_W < 0.0) throw domain_error("received power must be >= 0");
    if (rx_power_W == 0.0) return -std::numeric_limits<double>::infinity();
    const double noise_W = kBoltzmann * kNoiseTemperatureK * radio.bandwidth_Hz() *
                           std::pow(10.0, radio.noise_figure_dB / 10.0);
    return 10.0 * std::log10(rx_power_W / noise_W);
}

double ber_stage(double snr_dB, const RadioConfig& radio) {
    radio.validate();
    if (radio.modulation != Modulation::Bpsk) {
        throw domain_error("unsupported modulation");
    }
    if (snr_dB == -std::numeric_limits<double>::infinity()) return 0.5;
    const double snr = std::pow(10.0, snr_dB / 10.0);
    const double eb_n0 = snr * radio.bandwidth_Hz() / radio.data_rate_bps;
    // Q(sqrt(2x)) = erfc(sqrt(x)) / 2
    return 0.5 * std::erfc(std::sqrt(eb_n0));
}

Verdict reception_decision(double ber, const RadioConfig& radio) {
    radio.validate();
    if (ber < 0.0 || ber > 0.5) throw domain_error("BER must be in [0, 0.5]");
    return ber < radio.ber_threshold ? Verdict::Valid : Verdict::Dropped;
}

LinkStats run_link_simulation(const Scenario& scenario, std::uint64_t seed) {
    scenario.traffic.validate();
    scenario.radio.validate();
    if (!scenario.power_model) throw domain_error("scenario has no power model");

    std::optional<fading::FadingProcess> fading;
    if (scenario.fading.has_value()) {
        fading.emplace(*scenario.fading, scenario.wavelength_m, seed);
    }

    const auto emissions = generate_packets(scenario.traffic);
    const double serialization_s =
        scenario.traffic.packet_size_bits / scenario.radio.data_rate_bps;

    LinkStats stats;
    stats.records.reserve(emissions.size());
    for (std::size_t i = 0; i < emissions.size(); ++i) {
        ReceptionRecord rec;
        rec.t_s = emissions[i] + serialization_s;
        const char* stage = "received_power";
        try {
            rec.rx_power_W = received_power_stage(
                rec.t_s, scenario.power_model, fading ? &*fading : nullptr);
            if (std::isnan(rec.rx_power_W)) {
                // Malformed stage input, distinct from a normal BER drop.
                rec.rx_power_W = 0.0;
                rec.verdict = Verdict::Invalid;
            }
            rec.rx_power_dBm = rec.rx_power_W > 0.0
                                   ? 10.0 * std::log10(rec.rx_power_W * 1000.0)
                                   : -std::numeric_limits<double>::infinity();
            stage = "snr";
            rec.snr_dB = snr_stage(rec.rx_power_W, scenario.radio);
            stage = "ber";
            rec.ber = ber_stage(rec.snr_dB, scenario.radio);
            stage = "reception_decision";
            if (rec.verdict != Verdict::Invalid) {
                rec.verdict = reception_decision(rec.ber, scenario.radio);
            }
        } catch (const std::exception& e) {
            throw domain_error("packet " + std::to_string(i) + ", stage " + stage + ": " +
                               e.what());
        }
        ++stats.packets_sent;
        if (rec.verdict == Verdict::Valid) {
            ++stats.packets_received;
        } else {
            ++stats.packets_dropped;
        }
        stats.records.push_back(rec);
    }
    stats.throughput_bps = static_cast<double>(stats.packets_received) *
                           scenario.traffic.packet_size_bits / scenario.traffic.horizon_s;
    return stats;
}

}  // namespace rps::linksim
