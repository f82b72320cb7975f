#include "core/fading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace rps::fading {

namespace {
constexpr double kPi = std::numbers::pi;
}

double RicianParameters::dominant_amplitude() const {
    return sigma * std::sqrt(2.0 * K);
}

void RicianParameters::validate() const {
    if (K < 0.0) throw domain_error("Rician K factor must be >= 0");
    if (!(sigma > 0.0)) throw domain_error("Rician sigma must be positive");
    if (max_velocity_m_per_s < 0.0) throw domain_error("max velocity must be >= 0");
}

void MultipathProfile::validate() const {
    if (taps.empty()) throw domain_error("multipath profile needs at least one tap");
    for (std::size_t i = 0; i < taps.size(); ++i) {
        if (taps[i].tau_s < 0.0) throw domain_error("tap delays must be >= 0");
        if (taps[i].rho < 0.0) throw domain_error("tap amplitudes must be >= 0");
        if (i > 0 && taps[i].tau_s < taps[i - 1].tau_s) {
            throw domain_error("tap delays must be sorted non-decreasing");
        }
    }
}

double rician_amplitude(double x1, double x2, const RicianParameters& params) {
    params.validate();
    const double A = params.dominant_amplitude();
    return std::hypot(params.sigma * x1 + A, params.sigma * x2);
}

double normalized_power_envelope(double x1, double x2, double K,
                                 EnvelopeNormalization mode) {
    if (K < 0.0) throw domain_error("Rician K factor must be >= 0");
    const double i = x1 + std::sqrt(2.0 * K);
    const double numerator = i * i + x2 * x2;
    if (mode == EnvelopeNormalization::TotalPower) {
        return numerator / (2.0 * (K + 1.0));
    }
    if (K == 0.0) {
        throw domain_error("dominant-path normalization requires K > 0");
    }
    return numerator / (2.0 * K);
}

FadingProcess::FadingProcess(const RicianParameters& params, double wavelength_m,
                             std::uint64_t seed, int oscillators)
    : params_(params) {
    params_.validate();
    if (!(wavelength_m > 0.0)) throw domain_error("wavelength must be positive");
    if (oscillators < 1) throw domain_error("need at least one oscillator");

    max_doppler_hz_ = params_.max_velocity_m_per_s / wavelength_m;

    // Arrival angles in (0, pi/2), strictly decreasing cosine, so all
    // oscillator frequencies are distinct and positive; per-seed random
    // phases decorrelate realizations.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * kPi);
    doppler_hz_.reserve(oscillators);
    phase_i_.reserve(oscillators);
    phase_q_.reserve(oscillators);
    for (int n = 0; n < oscillators; ++n) {
        const double angle = kPi * (n + 0.5) / (2.0 * oscillators);
        doppler_hz_.push_back(max_doppler_hz_ * std::cos(angle));
        phase_i_.push_back(uniform(rng));
        phase_q_.push_back(uniform(rng));
    }
}

double FadingProcess::power_at(double t_s) const {
    const double scale = std::sqrt(2.0 / static_cast<double>(doppler_hz_.size()));
    double xi = 0.0;
    double xq = 0.0;
    for (std::size_t n = 0; n < doppler_hz_.size(); ++n) {
        const double w = 2.0 * kPi * doppler_hz_[n] * t_s;
        xi += std::cos(w + phase_i_[n]);
        xq += std::cos(w + phase_q_[n]);
    }
    xi *= scale;
    xq *= scale;
    const double sigma = params_.sigma;
    const double A = params_.dominant_amplitude();
    const double r2 = (sigma * xi + A) * (sigma * xi + A) + (sigma * xq) * (sigma * xq);
    return r2 / (2.0 * sigma * sigma * (params_.K + 1.0));
}

EnvelopeTrace envelope_process(const RicianParameters& params, double wavelength_m,
                               double dt_s, std::size_t n_samples, std::uint64_t seed) {
    if (!(dt_s > 0.0)) throw domain_error("sample interval must be positive");
    if (n_samples < 1) throw domain_error("need at least one sample");

    FadingProcess process(params, wavelength_m, seed);
    EnvelopeTrace trace;
    trace.samples.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) * dt_s;
        const double t_rot =
            static_cast<double>(static_cast<std::int64_t>(i) + params.envelope_table_offset) *
            dt_s;
        trace.samples.push_back({t, process.power_at(t_rot)});
    }
    return trace;
}

std::vector<std::complex<double>> impulse_response(const MultipathProfile& profile,
                                                   const std::vector<double>& t_grid) {
    profile.validate();
    if (t_grid.empty()) throw domain_error("sample grid must be non-empty");

    std::vector<std::complex<double>> response(t_grid.size(), {0.0, 0.0});
    for (const auto& tap : profile.taps) {
        std::size_t best = 0;
        double best_dist = std::abs(t_grid[0] - tap.tau_s);
        for (std::size_t i = 1; i < t_grid.size(); ++i) {
            const double dist = std::abs(t_grid[i] - tap.tau_s);
            if (dist < best_dist) {  // ties keep the earlier sample
                best_dist = dist;
                best = i;
            }
        }
        response[best] += std::polar(tap.rho, tap.phi_rad);
    }
    return response;
}

}  // namespace rps::fading
