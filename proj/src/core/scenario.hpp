#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "core/linksim.hpp"
#include "core/terrain.hpp"

namespace rps::scenario {

enum class Model { FreeSpace, TwoRay, LosTwoRay, Tirem };

Model model_from_name(const std::string& name);
const char* to_string(Model model);

// Everything a sweep or link-simulation run needs, assembled from a flat
// key-value config file and/or individual setters.
struct ScenarioConfig {
    Model model = Model::FreeSpace;
    std::uint64_t seed = 1;

    terrain::LinkGeometry geometry{.tx_height_m = 25.0,
                                   .rx_height_m = 25.0,
                                   .frequency_MHz = 905.0,
                                   .polarization = terrain::Polarization::Vertical,
                                   .path_length_m = 1000.0};
    std::optional<std::string> profile_path;

    proploss::GroundParameters ground{};
    proploss::AtmosphereParameters atmosphere{};
    proploss::LinkBudget budget{};
    proploss::TerrainLossOptions terrain_options{};
    proploss::TwoRayForm two_ray_form = proploss::TwoRayForm::Standard;

    linksim::TrafficConfig traffic{};
    linksim::RadioConfig radio{};

    bool fading_enabled = false;
    fading::RicianParameters rician{};
};

// Flat `section.key = value` text format, '#' comments, blank lines
// ignored. Unknown keys are an error.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config_file(const std::string& path);
void apply_key(ScenarioConfig& config, const std::string& key, const std::string& value);

// Path loss in positive dB for the configured model at one distance.
// For the terrain model the profile is stretched to the target distance.
struct SweepPoint {
    double distance_m = 0.0;
    double loss_dB = 0.0;
    proploss::LossMode mode = proploss::LossMode::LineOfSight;
};

struct PreparedScenario {
    ScenarioConfig config;
    std::optional<terrain::TerrainProfile> profile;

    SweepPoint loss_at(double distance_m) const;
    double received_power_W(double distance_m) const;
};

PreparedScenario prepare(const ScenarioConfig& config);

std::vector<SweepPoint> sweep(const PreparedScenario& scenario, double d_min_m,
                              double d_max_m, std::size_t n_points, bool log_spacing);

linksim::LinkStats run(const PreparedScenario& scenario);

// CSV writers for the public file formats.
void write_sweep_csv(const std::vector<SweepPoint>& points, std::ostream& out);
void write_records_csv(const linksim::LinkStats& stats, std::ostream& out);
void write_stats_csv(const linksim::LinkStats& stats, std::ostream& out);
void write_envelope_csv(const fading::EnvelopeTrace& trace, std::ostream& out);

// Writes via a temp-free all-or-nothing path: contents are assembled in
// memory, then written in one pass; failures leave no partial file.
void write_file(const std::string& path, const std::string& contents);

}  // namespace rps::scenario
