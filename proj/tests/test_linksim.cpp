#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "core/linksim.hpp"

using namespace rps;
using namespace rps::linksim;

namespace {

Scenario fixed_power_scenario(double rx_power_W) {
    Scenario s;
    s.traffic = TrafficConfig{};
    s.radio = RadioConfig{};
    s.power_model = [rx_power_W](double) { return rx_power_W; };
    return s;
}

}  // namespace

TEST_CASE("packet generation over a bounded window") {
    const auto emissions = generate_packets({1024.0, 1.0, 10.0, 100.0});
    REQUIRE(emissions.size() == 90);
    CHECK(emissions.front() == 10.0);
    CHECK(emissions.back() == 99.0);
}

TEST_CASE("a horizon before the start time emits nothing") {
    CHECK(generate_packets({1024.0, 1.0, 10.0, 5.0}).empty());
}

TEST_CASE("traffic validation") {
    CHECK_THROWS_AS(generate_packets({0.0, 1.0, 10.0, 100.0}), domain_error);
    CHECK_THROWS_AS(generate_packets({1024.0, 0.0, 10.0, 100.0}), domain_error);
}

TEST_CASE("received power stage passes the model through without fading") {
    const auto model = [](double) { return 2.5e-9; };
    CHECK(received_power_stage(12.0, model, nullptr) == 2.5e-9);
}

TEST_CASE("received power stage multiplies in the fading envelope") {
    const fading::RicianParameters params{0.5, 1.0, 1.0, 0};
    const fading::FadingProcess process(params, 0.3313, 99);
    const auto model = [](double) { return 4.0e-10; };
    const double t = 3.7;
    CHECK(received_power_stage(t, model, &process) ==
          doctest::Approx(4.0e-10 * process.power_at(t)).epsilon(1e-15));
}

TEST_CASE("thermal noise floor at 20 MHz bandwidth") {
    RadioConfig radio;
    // k_B * 290 K * 2e7 Hz
    const double noise_W = 1.380649e-23 * 290.0 * 2.0e7;
    CHECK(noise_W == doctest::Approx(8.008e-14).epsilon(1e-4));
    CHECK(snr_stage(noise_W, radio) == doctest::Approx(0.0).epsilon(1e-12));
    const double rx = 1.0e-11;  // -80 dBm
    CHECK(snr_stage(rx, radio) == doctest::Approx(20.9648872375883).epsilon(1e-9));
}

TEST_CASE("zero received power yields the -inf sentinel") {
    RadioConfig radio;
    CHECK(snr_stage(0.0, radio) == -std::numeric_limits<double>::infinity());
    CHECK(ber_stage(-std::numeric_limits<double>::infinity(), radio) == 0.5);
}

TEST_CASE("BPSK BER worked values") {
    RadioConfig radio;
    radio.bandwidth_kHz = 1.0;
    radio.data_rate_bps = 1000.0;  // Eb/N0 == SNR
    CHECK(ber_stage(0.0, radio) == doctest::Approx(0.07864960352514257).epsilon(1e-12));
    CHECK(ber_stage(200.0, radio) == doctest::Approx(0.0));
    // Eb/N0 -> 0 drives BER to one half
    CHECK(ber_stage(-200.0, radio) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("reception decision uses a strict threshold") {
    RadioConfig radio;
    radio.ber_threshold = 1.0e-3;
    CHECK(reception_decision(0.0, radio) == Verdict::Valid);
    CHECK(reception_decision(1.0e-3, radio) == Verdict::Dropped);
    CHECK(reception_decision(0.4, radio) == Verdict::Dropped);
    CHECK_THROWS_AS(reception_decision(0.6, radio), domain_error);
}

TEST_CASE("high-power short-range run delivers every packet") {
    const auto stats = run_link_simulation(fixed_power_scenario(1.0e-6), 1);
    CHECK(stats.packets_sent == 90);
    CHECK(stats.packets_received == 90);
    CHECK(stats.packets_dropped == 0);
    CHECK(stats.throughput_bps == doctest::Approx(921.6).epsilon(1e-12));
}

TEST_CASE("vanishing power drops every packet") {
    const auto stats = run_link_simulation(fixed_power_scenario(1.0e-18), 1);
    CHECK(stats.packets_sent == 90);
    CHECK(stats.packets_received == 0);
    CHECK(stats.packets_dropped == 90);
}

TEST_CASE("identical scenario and seed reproduce the stats") {
    auto scenario = fixed_power_scenario(5.0e-13);
    scenario.fading = fading::RicianParameters{0.5, 1.0, 1.0, 0};
    scenario.wavelength_m = 0.3313;
    const auto a = run_link_simulation(scenario, 42);
    const auto b = run_link_simulation(scenario, 42);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].rx_power_W == b.records[i].rx_power_W);
        CHECK(a.records[i].ber == b.records[i].ber);
        CHECK(a.records[i].verdict == b.records[i].verdict);
    }
    CHECK(a.packets_received == b.packets_received);
}

TEST_CASE("stationary run without fading has constant records") {
    const auto stats = run_link_simulation(fixed_power_scenario(3.0e-13), 1);
    for (const auto& rec : stats.records) {
        CHECK(rec.rx_power_W == stats.records[0].rx_power_W);
        CHECK(rec.snr_dB == stats.records[0].snr_dB);
        CHECK(rec.ber == stats.records[0].ber);
    }
}

TEST_CASE("records recompute exactly through the stage operations") {
    auto scenario = fixed_power_scenario(2.0e-13);
    scenario.fading = fading::RicianParameters{1.0, 1.0, 2.0, 0};
    scenario.wavelength_m = 0.3313;
    const auto stats = run_link_simulation(scenario, 7);
    const fading::FadingProcess process(*scenario.fading, scenario.wavelength_m, 7);
    for (const auto& rec : stats.records) {
        const double power = received_power_stage(rec.t_s, scenario.power_model, &process);
        CHECK(power == rec.rx_power_W);
        const double snr = snr_stage(power, scenario.radio);
        CHECK(snr == rec.snr_dB);
        const double ber = ber_stage(snr, scenario.radio);
        CHECK(ber == rec.ber);
        CHECK(reception_decision(ber, scenario.radio) == rec.verdict);
    }
}

TEST_CASE("conservation and throughput identities") {
    for (const double power : {1.0e-9, 1.0e-12, 8.0e-14, 1.0e-15}) {
        const auto stats = run_link_simulation(fixed_power_scenario(power), 3);
        CHECK(stats.packets_sent == stats.packets_received + stats.packets_dropped);
        CHECK(stats.throughput_bps ==
              doctest::Approx(stats.packets_received * 1024.0 / 100.0).epsilon(1e-9));
    }
}

TEST_CASE("raising transmit power never loses packets") {
    std::size_t prev = 0;
    for (double power = 1.0e-15; power < 1.0e-10; power *= 2.0) {
        const auto stats = run_link_simulation(fixed_power_scenario(power), 1);
        CHECK(stats.packets_received >= prev);
        prev = stats.packets_received;
    }
}

TEST_CASE("NaN model output is classified invalid, not dropped") {
    auto scenario = fixed_power_scenario(0.0);
    scenario.power_model = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
    const auto stats = run_link_simulation(scenario, 1);
    CHECK(stats.packets_received == 0);
    for (const auto& rec : stats.records) {
        CHECK(rec.verdict == Verdict::Invalid);
    }
}
