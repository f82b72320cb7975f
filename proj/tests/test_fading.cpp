#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "core/fading.hpp"

using namespace rps;
using namespace rps::fading;

TEST_CASE("dominant amplitude satisfies A^2 = 2 sigma^2 K") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        RicianParameters params{u(rng), u(rng), 1.0, 0};
        const double a = params.dominant_amplitude();
        CHECK(a * a == doctest::Approx(2.0 * params.sigma * params.sigma * params.K)
                           .epsilon(1e-12));
    }
    CHECK((RicianParameters{0.0, 1.0, 1.0, 0}.dominant_amplitude()) == 0.0);
}

TEST_CASE("rician amplitude degenerates to Rayleigh at K = 0") {
    const RicianParameters rayleigh{0.0, 1.0, 1.0, 0};
    CHECK(rician_amplitude(0.3, -0.4, rayleigh) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("rician amplitude at the mean point equals A") {
    const RicianParameters params{0.5, 1.0, 1.0, 0};
    CHECK(rician_amplitude(0.0, 0.0, params) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mean squared amplitude matches 2 sigma^2 (K+1)") {
    const RicianParameters params{0.5, 1.0, 1.0, 0};
    std::mt19937_64 rng(42);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int n = 400000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = rician_amplitude(normal(rng), normal(rng), params);
        sum += r * r;
    }
    CHECK(sum / n == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("normalized power envelope worked values") {
    CHECK(normalized_power_envelope(0.0, 0.0, 0.5, EnvelopeNormalization::TotalPower) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    for (const double k : {0.1, 0.5, 2.0, 9.0}) {
        CHECK(normalized_power_envelope(0.0, 0.0, k,
                                        EnvelopeNormalization::DominantPathPower) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(
        normalized_power_envelope(0.0, 0.0, 0.0, EnvelopeNormalization::DominantPathPower),
        domain_error);
}

TEST_CASE("normalized total-power envelope has unit mean") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (const double k : {0.0, 0.5, 1.0, 5.0}) {
        const int n = 200000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            sum += normalized_power_envelope(normal(rng), normal(rng), k,
                                             EnvelopeNormalization::TotalPower);
        }
        CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("zero velocity yields a constant trace") {
    const RicianParameters params{0.5, 1.0, 0.0, 0};
    const auto trace = envelope_process(params, 0.3313, 0.01, 200, 77);
    for (const auto& s : trace.samples) {
        CHECK(s.power_norm == doctest::Approx(trace.samples[0].power_norm).epsilon(1e-12));
    }
}

TEST_CASE("same seed reproduces the trace bit-identically") {
    const RicianParameters params{0.5, 1.0, 1.0, 0};
    const auto a = envelope_process(params, 0.3313, 0.001, 1000, 123);
    const auto b = envelope_process(params, 0.3313, 0.001, 1000, 123);
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].power_norm == b.samples[i].power_norm);
    }
    const auto c = envelope_process(params, 0.3313, 0.001, 1000, 124);
    CHECK(a.samples[10].power_norm != c.samples[10].power_norm);
}

TEST_CASE("table offset rotates the generated sequence") {
    RicianParameters params{0.5, 1.0, 1.0, 0};
    const auto base = envelope_process(params, 0.3313, 0.001, 100, 55);
    params.envelope_table_offset = 40;
    const auto rotated = envelope_process(params, 0.3313, 0.001, 60, 55);
    for (std::size_t i = 0; i < rotated.samples.size(); ++i) {
        CHECK(rotated.samples[i].power_norm ==
              doctest::Approx(base.samples[i + 40].power_norm).epsilon(1e-12));
    }
}

TEST_CASE("long-run envelope mean is close to 1") {
    const RicianParameters params{0.5, 1.0, 1.0, 0};
    const auto trace = envelope_process(params, 0.3313, 0.01, 500000, 31);
    double sum = 0.0;
    for (const auto& s : trace.samples) sum += s.power_norm;
    CHECK(sum / trace.samples.size() == doctest::Approx(1.0).epsilon(0.005));
}

TEST_CASE("faster mobiles decorrelate sooner") {
    const double lam = 0.3313;
    const double dt = 0.002;
    const std::size_t n = 32768;
    auto half_decay_lag = [&](double velocity) {
        const RicianParameters params{0.5, 1.0, velocity, 0};
        const auto trace = envelope_process(params, lam, dt, n, 17);
        double mean = 0.0;
        for (const auto& s : trace.samples) mean += s.power_norm;
        mean /= n;
        double var = 0.0;
        for (const auto& s : trace.samples) {
            var += (s.power_norm - mean) * (s.power_norm - mean);
        }
        for (std::size_t lag = 1; lag < n / 2; ++lag) {
            double acc = 0.0;
            for (std::size_t i = 0; i + lag < n; ++i) {
                acc += (trace.samples[i].power_norm - mean) *
                       (trace.samples[i + lag].power_norm - mean);
            }
            if (acc / var < 0.5) return lag;
        }
        return n;
    };
    const auto slow = half_decay_lag(0.5);
    const auto mid = half_decay_lag(1.0);
    const auto fast = half_decay_lag(2.0);
    CHECK(slow > mid);
    CHECK(mid > fast);
}

TEST_CASE("envelope process rejects bad arguments") {
    const RicianParameters params{0.5, 1.0, 1.0, 0};
    CHECK_THROWS_AS(envelope_process(params, 0.3313, 0.0, 10, 1), domain_error);
    CHECK_THROWS_AS(envelope_process(params, 0.3313, 0.01, 0, 1), domain_error);
    CHECK_THROWS_AS((RicianParameters{-0.1, 1.0, 1.0, 0}.validate()), domain_error);
    CHECK_THROWS_AS((RicianParameters{0.5, 0.0, 1.0, 0}.validate()), domain_error);
}

TEST_CASE("single tap impulse response") {
    const MultipathProfile profile{{{0.0, 1.0, 0.0}}};
    const auto y = impulse_response(profile, {0.0, 1e-6, 2e-6});
    CHECK((y[0] == std::complex<double>{1.0, 0.0}));
    CHECK(std::abs(y[1]) == 0.0);
    CHECK(std::abs(y[2]) == 0.0);
}

TEST_CASE("opposite-phase co-located taps cancel") {
    const MultipathProfile profile{{{1e-6, 0.7, 0.0}, {1e-6, 0.7, std::acos(-1.0)}}};
    const auto y = impulse_response(profile, {0.0, 1e-6, 2e-6});
    CHECK(std::abs(y[1]) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("three-tap response matches direct summation") {
    const MultipathProfile profile{
        {{0.0, 1.0, 0.1}, {1.4e-6, 0.5, 2.0}, {3.1e-6, 0.25, -1.0}}};
    std::vector<double> grid;
    for (int i = 0; i < 6; ++i) grid.push_back(i * 1e-6);
    const auto y = impulse_response(profile, grid);

    std::vector<std::complex<double>> expected(grid.size());
    for (const auto& tap : profile.taps) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < grid.size(); ++i) {
            if (std::abs(grid[i] - tap.tau_s) < std::abs(grid[best] - tap.tau_s)) best = i;
        }
        expected[best] += std::polar(tap.rho, tap.phi_rad);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(y[i] - expected[i]) < 1e-15);
    }
}

TEST_CASE("equidistant taps land on the earlier sample") {
    const MultipathProfile profile{{{0.5e-6, 1.0, 0.0}}};
    const auto y = impulse_response(profile, {0.0, 1e-6});
    CHECK(std::abs(y[0]) == doctest::Approx(1.0));
    CHECK(std::abs(y[1]) == 0.0);
}

TEST_CASE("impulse response is linear in the profile") {
    const std::vector<double> grid{0.0, 1e-6, 2e-6, 3e-6};
    const MultipathProfile a{{{0.0, 1.0, 0.3}, {2e-6, 0.4, 1.0}}};
    const MultipathProfile b{{{1e-6, 0.8, -0.5}}};
    MultipathProfile combined{{{0.0, 1.0, 0.3}, {1e-6, 0.8, -0.5}, {2e-6, 0.4, 1.0}}};
    const auto ya = impulse_response(a, grid);
    const auto yb = impulse_response(b, grid);
    const auto yc = impulse_response(combined, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(yc[i] - (ya[i] + yb[i])) < 1e-15);
    }
}

TEST_CASE("multipath profile validation") {
    CHECK_THROWS_AS(impulse_response(MultipathProfile{}, {0.0}), domain_error);
    const MultipathProfile unsorted{{{2e-6, 1.0, 0.0}, {1e-6, 1.0, 0.0}}};
    CHECK_THROWS_AS(impulse_response(unsorted, {0.0}), domain_error);
}
