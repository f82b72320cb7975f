#include "core/proploss.hpp"

#include <cmath>
#include <numbers>

namespace rps::proploss {

namespace {

constexpr double kPi = std::numbers::pi;

double to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace

void GroundParameters::validate() const {
    if (relative_permittivity < 1.0 || relative_permittivity > 100.0) {
        throw range_error("PERMIT", "relative permittivity " +
                                        std::to_string(relative_permittivity) +
                                        " outside [1, 100] (PERMIT)");
    }
    if (conductivity_S_per_m < 0.00001 || conductivity_S_per_m > 100.0) {
        throw range_error("CONDUC", "conductivity " + std::to_string(conductivity_S_per_m) +
                                        " S/m outside [0.00001, 100] S/m (CONDUC)");
    }
}

GroundParameters ground_preset(const std::string& name) {
    if (name == "average") return {15.0, 0.005};
    if (name == "poor") return {4.0, 0.001};
    if (name == "good") return {25.0, 0.020};
    if (name == "fresh_water") return {81.0, 0.010};
    if (name == "sea_water") return {81.0, 5.000};
    throw domain_error("unknown ground preset '" + name + "'");
}

void AtmosphereParameters::validate() const {
    if (surface_refractivity_N < 200.0 || surface_refractivity_N > 450.0) {
        throw range_error("REFRAC", "surface refractivity " +
                                        std::to_string(surface_refractivity_N) +
                                        " outside [200, 450] N-units (REFRAC)");
    }
    if (humidity_g_per_m3 < 0.0 || humidity_g_per_m3 > 50.0) {
        throw range_error("HUMID", "humidity " + std::to_string(humidity_g_per_m3) +
                                       " outside [0, 50] g/m^3 (HUMID)");
    }
    if (climate_M_dB < 19.0 || climate_M_dB > 40.0) {
        throw domain_error("troposcatter climate constant " + std::to_string(climate_M_dB) +
                           " outside [19, 40] dB");
    }
}

void LinkBudget::validate() const {
    if (!(tx_power_W > 0.0)) throw domain_error("transmit power must be positive");
    if (!(gain_tx > 0.0) || !(gain_rx > 0.0)) throw domain_error("antenna gains must be positive");
    if (system_loss < 1.0) throw domain_error("system loss must be >= 1");
}

const char* to_string(LossMode mode) {
    switch (mode) {
        case LossMode::LineOfSight: return "line_of_sight";
        case LossMode::Diffraction: return "diffraction";
        case LossMode::Troposcatter: return "troposcatter";
        case LossMode::Combined: return "combined";
    }
    return "unknown";
}

double free_space_received_power(const LinkBudget& budget, double wavelength_m,
                                 double distance_m) {
    budget.validate();
    if (!(distance_m > 0.0)) throw domain_error("distance must be positive");
    if (!(wavelength_m > 0.0)) throw domain_error("wavelength must be positive");
    const double denom = 16.0 * kPi * kPi * distance_m * distance_m * budget.system_loss;
    return budget.tx_power_W * budget.gain_tx * budget.gain_rx * wavelength_m * wavelength_m /
           denom;
}

double two_ray_received_power(const LinkBudget& budget, double tx_height_m,
                              double rx_height_m, double distance_m, TwoRayForm form) {
    budget.validate();
    if (!(distance_m > 0.0)) throw domain_error("distance must be positive");
    if (!(tx_height_m > 0.0) || !(rx_height_m > 0.0)) {
        throw domain_error("antenna heights must be positive");
    }
    const double d4 = distance_m * distance_m * distance_m * distance_m;
    const double heights = form == TwoRayForm::Standard
                               ? tx_height_m * tx_height_m * rx_height_m * rx_height_m
                               : tx_height_m * rx_height_m;
    return budget.tx_power_W * budget.gain_tx * budget.gain_rx * heights / d4;
}

double los_two_ray_ratio(double wavelength_m, double r1_m, double r2_m,
                         std::complex<double> reflection) {
    if (!(r1_m > 0.0) || !(r2_m > 0.0)) throw domain_error("path lengths must be positive");
    if (!(wavelength_m > 0.0)) throw domain_error("wavelength must be positive");
    const double k = 2.0 * kPi / wavelength_m;
    const std::complex<double> j(0.0, 1.0);
    const std::complex<double> direct = std::exp(-j * (k * r1_m)) / r1_m;
    const std::complex<double> reflected = reflection * std::exp(-j * (k * r2_m)) / r2_m;
    const double scale = wavelength_m / (4.0 * kPi);
    return scale * scale * std::norm(direct + reflected);
}

double knife_edge_loss(double nu) {
    if (!std::isfinite(nu)) throw domain_error("diffraction parameter must be finite");
    if (nu < 0.0) return 0.0;
    if (nu <= 2.4) return 6.0 + 9.0 * nu + 1.27 * nu * nu;
    return 13.0 + 20.0 * std::log10(nu);
}

double troposcatter_loss(const TroposcatterInputs& in) {
    if (!(in.frequency_MHz > 0.0) || !(in.distance_km > 0.0) || !(in.scatter_angle_mrad > 0.0)) {
        throw domain_error("troposcatter frequency, distance, and scatter angle must be positive");
    }
    return in.M_dB + 30.0 * std::log10(in.frequency_MHz) + 10.0 * std::log10(in.distance_km) +
           30.0 * std::log10(in.scatter_angle_mrad) + in.common_volume_LN_dB +
           in.coupling_loss_LC_dB - in.gain_tx_dBi - in.gain_rx_dBi;
}

PathLossBreakdown total_path_loss(double L_o_dB, double L_l_dB, double L_md_dB,
                                  double L_r_dB, LossMode mode) {
    if (L_o_dB < 0.0 || L_l_dB < 0.0 || L_md_dB < 0.0 || L_r_dB < 0.0) {
        throw domain_error("path loss components must be non-negative");
    }
    PathLossBreakdown b;
    b.L_o_dB = L_o_dB;
    b.L_l_dB = L_l_dB;
    b.L_md_dB = L_md_dB;
    b.L_r_dB = L_r_dB;
    b.total_dB = L_o_dB + L_l_dB + L_md_dB + L_r_dB;
    b.mode = mode;
    return b;
}

std::complex<double> reflection_coefficient(const GroundParameters& ground,
                                            terrain::Polarization polarization,
                                            double grazing_angle_rad, double frequency_MHz) {
    ground.validate();
    if (!(grazing_angle_rad > 0.0) || grazing_angle_rad > kPi / 2.0) {
        throw domain_error("grazing angle must be in (0, pi/2]");
    }
    if (frequency_MHz < 1.0 || frequency_MHz > 20000.0) {
        throw range_error("PROPFQ", "frequency " + std::to_string(frequency_MHz) +
                                        " MHz outside [1, 20000] MHz (PROPFQ)");
    }
    const double wavelength = terrain::kSpeedOfLight / (frequency_MHz * 1.0e6);
    const std::complex<double> eps(ground.relative_permittivity,
                                   -60.0 * wavelength * ground.conductivity_S_per_m);
    const double s = std::sin(grazing_angle_rad);
    const double c = std::cos(grazing_angle_rad);
    const std::complex<double> root = std::sqrt(eps - c * c);
    if (polarization == terrain::Polarization::Vertical) {
        return (eps * s - root) / (eps * s + root);
    }
    return (s - root) / (s + root);
}

double free_space_loss_dB(double wavelength_m, double distance_m) {
    if (!(distance_m > 0.0) || !(wavelength_m > 0.0)) {
        throw domain_error("distance and wavelength must be positive");
    }
    return 20.0 * std::log10(4.0 * kPi * distance_m / wavelength_m);
}

namespace {

// Flat-earth reflection geometry for the line-of-sight branch: antenna
// tips referenced to the lower of the two endpoint ground elevations.
struct TwoRayGeometry {
    double r1;
    double r2;
    double grazing_rad;
};

TwoRayGeometry los_geometry(const terrain::TerrainProfile& profile,
                            const terrain::LinkGeometry& geom) {
    const double e0 = profile.points().front().elevation_m;
    const double e1 = profile.points().back().elevation_m;
    const double plane = std::min(e0, e1);
    const double ht = geom.tx_height_m + (e0 - plane);
    const double hr = geom.rx_height_m + (e1 - plane);
    const double d = geom.path_length_m;
    return {
        std::hypot(d, ht - hr),
        std::hypot(d, ht + hr),
        std::atan2(ht + hr, d),
    };
}

}  // namespace

PathLossBreakdown tirem_path_loss(const terrain::TerrainProfile& profile,
                                  const terrain::LinkGeometry& geom,
                                  const GroundParameters& ground,
                                  const AtmosphereParameters& atmosphere,
                                  const TerrainLossOptions& options) {
    geom.validate();
    ground.validate();
    atmosphere.validate();

    const double wavelength = geom.wavelength_m();
    const double fspl = free_space_loss_dB(wavelength, geom.path_length_m);
    const auto los = terrain::los_clearance(profile, geom);

    if (los.has_los) {
        const auto tr = los_geometry(profile, geom);
        const auto refl =
            reflection_coefficient(ground, geom.polarization, tr.grazing_rad, geom.frequency_MHz);
        const double ratio = los_two_ray_ratio(wavelength, tr.r1, tr.r2, refl);
        const double loss = std::max(0.0, -to_db(ratio));
        return total_path_loss(loss, options.local_screen_dB, 0.0, options.reflection_dB,
                               LossMode::LineOfSight);
    }

    const auto& obstacle = *los.dominant_obstacle;
    const double nu = terrain::diffraction_parameter(obstacle, wavelength);
    const double diffraction_total = fspl + knife_edge_loss(nu);

    const double theta_mrad = 1000.0 * (std::atan(obstacle.h_m / obstacle.d_T_m) +
                                        std::atan(obstacle.h_m / obstacle.d_R_m));
    const double tropo_total = troposcatter_loss({
        .M_dB = atmosphere.climate_M_dB,
        .frequency_MHz = geom.frequency_MHz,
        .distance_km = geom.path_length_m / 1000.0,
        .scatter_angle_mrad = theta_mrad,
        .common_volume_LN_dB = options.tropo_LN_dB,
        .coupling_loss_LC_dB = options.tropo_LC_dB,
    });

    // The dominant mechanism delivers the power; the composite loss is
    // never reported below free space.
    const double chosen = std::max(fspl, std::min(diffraction_total, tropo_total));
    LossMode mode;
    if (std::abs(diffraction_total - tropo_total) <= 3.0) {
        mode = LossMode::Combined;
    } else {
        mode = diffraction_total < tropo_total ? LossMode::Diffraction : LossMode::Troposcatter;
    }
    return total_path_loss(fspl, options.local_screen_dB, chosen - fspl, options.reflection_dB,
                           mode);
}

}  // namespace rps::proploss
