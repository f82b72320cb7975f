#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "core/errors.hpp"

namespace rps::fading {

// Rician channel description. A is derived so that A^2 = 2 sigma^2 K
// always holds; K = 0 degenerates to Rayleigh.
struct RicianParameters {
    double K = 0.5;
    double sigma = 1.0;
    double max_velocity_m_per_s = 1.0;
    std::int64_t envelope_table_offset = 0;

    double dominant_amplitude() const;  // A
    void validate() const;
};

struct MultipathTap {
    double tau_s = 0.0;
    double rho = 0.0;
    double phi_rad = 0.0;
};

struct MultipathProfile {
    std::vector<MultipathTap> taps;

    void validate() const;  // delays sorted, amplitudes >= 0, non-empty
};

struct EnvelopeSample {
    double t_s = 0.0;
    double power_norm = 0.0;  // r^2 / P
};

struct EnvelopeTrace {
    std::vector<EnvelopeSample> samples;
};

enum class EnvelopeNormalization { TotalPower, DominantPathPower };

// r = sqrt((sigma x1 + A)^2 + (sigma x2)^2) for standard-normal draws.
double rician_amplitude(double x1, double x2, const RicianParameters& params);

// Normalized power envelope r^2/P for given quadrature draws.
double normalized_power_envelope(double x1, double x2, double K,
                                 EnvelopeNormalization mode);

// Time-correlated Rician envelope generator: a fixed dominant component
// plus a sum-of-sinusoids scattered component whose Doppler spread is
// max_velocity / wavelength. Deterministic per seed; distinct instances
// may run concurrently, one instance may not be shared.
class FadingProcess {
public:
    FadingProcess(const RicianParameters& params, double wavelength_m,
                  std::uint64_t seed, int oscillators = 16);

    // Normalized power envelope (unit mean) at time t.
    double power_at(double t_s) const;

    const RicianParameters& params() const noexcept { return params_; }
    double max_doppler_hz() const noexcept { return max_doppler_hz_; }

private:
    RicianParameters params_;
    double max_doppler_hz_;
    std::vector<double> doppler_hz_;
    std::vector<double> phase_i_;
    std::vector<double> phase_q_;
};

EnvelopeTrace envelope_process(const RicianParameters& params, double wavelength_m,
                               double dt_s, std::size_t n_samples, std::uint64_t seed);

// Eq-style tap sum realized on a sample grid: each tap lands on its
// nearest grid time (ties toward the earlier sample), co-located taps add.
std::vector<std::complex<double>> impulse_response(const MultipathProfile& profile,
                                                   const std::vector<double>& t_grid);

}  // namespace rps::fading
