#pragma once

#include <complex>
#include <string>

#include "core/terrain.hpp"

namespace rps::proploss {

// Smooth-earth electrical ground constants, within the documented
// PERMIT/CONDUC validity ranges.
struct GroundParameters {
    double relative_permittivity = 15.0;
    double conductivity_S_per_m = 0.005;

    void validate() const;
};

// Named presets: average, poor, good, fresh_water, sea_water.
GroundParameters ground_preset(const std::string& name);

struct AtmosphereParameters {
    double surface_refractivity_N = 301.0;
    double humidity_g_per_m3 = 10.0;
    double climate_M_dB = 30.0;  // troposcatter climate constant

    void validate() const;
};

struct TroposcatterInputs {
    double M_dB = 30.0;
    double frequency_MHz = 0.0;
    double distance_km = 0.0;
    double scatter_angle_mrad = 0.0;
    double common_volume_LN_dB = 0.0;
    double coupling_loss_LC_dB = 0.0;
    double gain_tx_dBi = 0.0;
    double gain_rx_dBi = 0.0;
};

enum class LossMode { LineOfSight, Diffraction, Troposcatter, Combined };

const char* to_string(LossMode mode);

// Component losses in dB; total is their sum.
struct PathLossBreakdown {
    double L_o_dB = 0.0;   // free-space component
    double L_l_dB = 0.0;   // local screen
    double L_md_dB = 0.0;  // diffraction excess
    double L_r_dB = 0.0;   // reflection
    double total_dB = 0.0;
    LossMode mode = LossMode::LineOfSight;
};

// Transmit power, linear antenna gains, and system loss.
struct LinkBudget {
    double tx_power_W = 1.0;
    double gain_tx = 1.0;
    double gain_rx = 1.0;
    double system_loss = 1.0;

    void validate() const;
};

enum class TwoRayForm {
    Standard,     // h_t^2 h_r^2 / d^4
    LinearHeights,  // h_t h_r / d^4 variant
};

// Loss terms the composite terrain algorithm cannot derive from the
// profile; all default to zero.
struct TerrainLossOptions {
    double local_screen_dB = 0.0;
    double reflection_dB = 0.0;
    double tropo_LN_dB = 0.0;
    double tropo_LC_dB = 0.0;
};

double free_space_received_power(const LinkBudget& budget, double wavelength_m,
                                 double distance_m);

double two_ray_received_power(const LinkBudget& budget, double tx_height_m,
                              double rx_height_m, double distance_m,
                              TwoRayForm form = TwoRayForm::Standard);

// Direct + ground-reflected phasor sum; returns P_r/P_t.
double los_two_ray_ratio(double wavelength_m, double r1_m, double r2_m,
                         std::complex<double> reflection);

// Knife-edge loss in dB additional to free space.
double knife_edge_loss(double nu);

double troposcatter_loss(const TroposcatterInputs& in);

PathLossBreakdown total_path_loss(double L_o_dB, double L_l_dB, double L_md_dB,
                                  double L_r_dB, LossMode mode = LossMode::Combined);

// Plane-wave smooth-earth reflection coefficient from the complex
// permittivity eps_r - j*60*lambda*sigma.
std::complex<double> reflection_coefficient(const GroundParameters& ground,
                                            terrain::Polarization polarization,
                                            double grazing_angle_rad,
                                            double frequency_MHz);

// Free-space path loss in dB for unit gains: 20 log10(4 pi d / lambda).
double free_space_loss_dB(double wavelength_m, double distance_m);

// Composite terrain path loss: line-of-sight two-ray when the profile is
// clear, otherwise the lesser of knife-edge diffraction and troposcatter,
// never below free space.
PathLossBreakdown tirem_path_loss(const terrain::TerrainProfile& profile,
                                  const terrain::LinkGeometry& geom,
                                  const GroundParameters& ground,
                                  const AtmosphereParameters& atmosphere,
                                  const TerrainLossOptions& options = {});

}  // namespace rps::proploss
