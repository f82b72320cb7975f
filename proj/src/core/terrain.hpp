#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace rps::terrain {

inline constexpr double kSpeedOfLight = 299792458.0;

inline constexpr double kMinElevationM = -450.0;   // HPRFL lower bound
inline constexpr double kMaxElevationM = 9000.0;   // HPRFL upper bound
inline constexpr std::size_t kMinProfilePoints = 3;  // NPRFL

struct ProfilePoint {
    double distance_m = 0.0;   // great-circle distance from the transmitter
    double elevation_m = 0.0;  // height above mean sea level
};

// Discrete elevation profile along the TX->RX great-circle path.
// Distances are strictly increasing and start at 0; elevations are held
// to the HPRFL validity range.
class TerrainProfile {
public:
    explicit TerrainProfile(std::vector<ProfilePoint> points);

    const std::vector<ProfilePoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double length_m() const noexcept { return points_.back().distance_m; }

    // Horizontally rescales the profile so its length becomes new_length_m,
    // preserving shape. Used by distance sweeps.
    TerrainProfile stretched_to(double new_length_m) const;

private:
    std::vector<ProfilePoint> points_;
};

enum class Polarization { Vertical, Horizontal };

// Antenna and carrier description of one link.
struct LinkGeometry {
    double tx_height_m = 0.0;
    double rx_height_m = 0.0;
    double frequency_MHz = 0.0;
    Polarization polarization = Polarization::Vertical;
    double path_length_m = 0.0;

    double wavelength_m() const {
        return kSpeedOfLight / (frequency_MHz * 1.0e6);
    }

    // Throws range_error naming the offending variable (TANTHT, RANTHT,
    // PROPFQ) when outside the documented validity ranges.
    void validate() const;
};

// Single knife-edge geometry. h_m is measured from the direct TX-tip to
// RX-tip sightline; negative when the point clears the line.
struct ObstacleGeometry {
    double h_m = 0.0;
    double d_T_m = 0.0;  // transmitter -> obstacle
    double d_R_m = 0.0;  // obstacle -> receiver
};

struct LosReport {
    bool has_los = false;
    // The most intruding profile point. Present when the path is
    // obstructed, and also when clear (then with negative h_m).
    std::optional<ObstacleGeometry> dominant_obstacle;
};

// Parses the `distance_m,elevation_m` CSV format. Throws parse_error with
// a line number for malformed rows, range_error (NPRFL/HPRFL) for
// validity violations.
TerrainProfile load_profile(std::istream& csv);
TerrainProfile load_profile_file(const std::string& path);

void write_profile(const TerrainProfile& profile, std::ostream& out);

// Sightline test from TX antenna tip to RX antenna tip with linear
// interpolation of the line between profile samples. Ties on intrusion
// break toward the smaller distance.
LosReport los_clearance(const TerrainProfile& profile, const LinkGeometry& geom);

// Fresnel-Kirchhoff diffraction parameter for a single knife edge.
// Dimensionless; carries the sign of h_m.
double diffraction_parameter(const ObstacleGeometry& obstacle, double wavelength_m);

}  // namespace rps::terrain
