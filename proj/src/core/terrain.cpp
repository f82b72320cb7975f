#include "core/terrain.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

namespace rps::terrain {

namespace {

bool parse_double(const std::string& field, double& out) {
    std::size_t consumed = 0;
    try {
        out = std::stod(field, &consumed);
    } catch (const std::exception&) {
        return false;
    }
    return consumed == field.size() && std::isfinite(out);
}

}  // namespace

TerrainProfile::TerrainProfile(std::vector<ProfilePoint> points)
    : points_(std::move(points)) {
    if (points_.size() < kMinProfilePoints) {
        throw range_error("NPRFL", "profile needs at least 3 points (NPRFL), got " +
                                       std::to_string(points_.size()));
    }
    if (points_.front().distance_m != 0.0) {
        throw domain_error("profile must start at distance 0");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (i > 0 && p.distance_m <= points_[i - 1].distance_m) {
            throw domain_error("profile distances must be strictly increasing at index " +
                               std::to_string(i));
        }
        if (p.elevation_m < kMinElevationM || p.elevation_m > kMaxElevationM) {
            throw range_error("HPRFL", "elevation " + std::to_string(p.elevation_m) +
                                           " m outside [-450, 9000] m (HPRFL)");
        }
    }
}

TerrainProfile TerrainProfile::stretched_to(double new_length_m) const {
    if (new_length_m <= 0.0) {
        throw domain_error("profile length must be positive");
    }
    const double scale = new_length_m / length_m();
    std::vector<ProfilePoint> scaled = points_;
    for (auto& p : scaled) {
        p.distance_m *= scale;
    }
    scaled.back().distance_m = new_length_m;  // keep the endpoint exact
    return TerrainProfile(std::move(scaled));
}

void LinkGeometry::validate() const {
    if (!(tx_height_m > 0.0) || tx_height_m > 30000.0) {
        throw range_error("TANTHT", "transmitter antenna height " +
                                        std::to_string(tx_height_m) +
                                        " m outside (0, 30000] m (TANTHT)");
    }
    if (!(rx_height_m > 0.0) || rx_height_m > 30000.0) {
        throw range_error("RANTHT", "receiver antenna height " +
                                        std::to_string(rx_height_m) +
                                        " m outside (0, 30000] m (RANTHT)");
    }
    if (frequency_MHz < 1.0 || frequency_MHz > 20000.0) {
        throw range_error("PROPFQ", "frequency " + std::to_string(frequency_MHz) +
                                        " MHz outside [1, 20000] MHz (PROPFQ)");
    }
    if (!(path_length_m > 0.0)) {
        throw domain_error("path length must be positive");
    }
}

TerrainProfile load_profile(std::istream& csv) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(csv, line)) {
        throw parse_error(1, "empty profile stream");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "distance_m,elevation_m") {
        throw parse_error(line_no, "expected header 'distance_m,elevation_m', got '" + line + "'");
    }

    std::vector<ProfilePoint> points;
    while (std::getline(csv, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw parse_error(line_no, "line " + std::to_string(line_no) + ": missing comma");
        }
        ProfilePoint p;
        if (!parse_double(line.substr(0, comma), p.distance_m) ||
            !parse_double(line.substr(comma + 1), p.elevation_m)) {
            throw parse_error(line_no, "line " + std::to_string(line_no) + ": malformed number");
        }
        points.push_back(p);
    }
    return TerrainProfile(std::move(points));
}

TerrainProfile load_profile_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open profile file '" + path + "'");
    }
    return load_profile(in);
}

void write_profile(const TerrainProfile& profile, std::ostream& out) {
    out << "distance_m,elevation_m\n";
    for (const auto& p : profile.points()) {
        std::ostringstream row;
        row.precision(17);
        row << p.distance_m << ',' << p.elevation_m << '\n';
        out << row.str();
    }
}

LosReport los_clearance(const TerrainProfile& profile, const LinkGeometry& geom) {
    const auto& pts = profile.points();
    const double rel = std::abs(profile.length_m() - geom.path_length_m) /
                       std::max(profile.length_m(), geom.path_length_m);
    if (rel > 1.0e-6) {
        throw domain_error("profile length " + std::to_string(profile.length_m()) +
                           " m does not match geometry path length " +
                           std::to_string(geom.path_length_m) + " m");
    }

    const double tip_tx = pts.front().elevation_m + geom.tx_height_m;
    const double tip_rx = pts.back().elevation_m + geom.rx_height_m;
    const double span = profile.length_m();

    LosReport report;
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t worst_idx = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double frac = pts[i].distance_m / span;
        const double sightline = tip_tx + (tip_rx - tip_tx) * frac;
        const double intrusion = pts[i].elevation_m - sightline;
        if (intrusion > worst) {
            worst = intrusion;
            worst_idx = i;
        }
    }

    report.has_los = worst < 0.0;
    const auto& p = pts[worst_idx];
    // Endpoints sit exactly on the sightline only when antenna heights are
    // zero, which the geometry ranges forbid; interior worst point is the
    // knife-edge candidate.
    if (p.distance_m > 0.0 && p.distance_m < span) {
        report.dominant_obstacle = ObstacleGeometry{
            .h_m = worst,
            .d_T_m = p.distance_m,
            .d_R_m = span - p.distance_m,
        };
    }
    return report;
}

double diffraction_parameter(const ObstacleGeometry& obstacle, double wavelength_m) {
    if (!(obstacle.d_T_m > 0.0) || !(obstacle.d_R_m > 0.0)) {
        throw domain_error("obstacle distances must be positive");
    }
    if (!(wavelength_m > 0.0)) {
        throw domain_error("wavelength must be positive");
    }
    return obstacle.h_m *
           std::sqrt((2.0 / wavelength_m) * (1.0 / obstacle.d_T_m + 1.0 / obstacle.d_R_m));
}

}  // namespace rps::terrain
