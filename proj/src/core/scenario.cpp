#include "core/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace rps::scenario {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& value, const std::string& key) {
    std::size_t consumed = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &consumed);
    } catch (const std::exception&) {
        consumed = std::string::npos;
    }
    if (consumed != value.size()) {
        throw parse_error(0, "key '" + key + "': expected a number, got '" + value + "'");
    }
    return out;
}

bool to_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw parse_error(0, "key '" + key + "': expected a boolean, got '" + value + "'");
}

std::string num(double v) {
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

Model model_from_name(const std::string& name) {
    if (name == "freespace") return Model::FreeSpace;
    if (name == "tworay") return Model::TwoRay;
    if (name == "lostworay") return Model::LosTwoRay;
    if (name == "tirem") return Model::Tirem;
    throw parse_error(0, "unknown model '" + name +
                             "' (expected freespace, tworay, lostworay, or tirem)");
}

const char* to_string(Model model) {
    switch (model) {
        case Model::FreeSpace: return "freespace";
        case Model::TwoRay: return "tworay";
        case Model::LosTwoRay: return "lostworay";
        case Model::Tirem: return "tirem";
    }
    return "unknown";
}

void apply_key(ScenarioConfig& c, const std::string& key, const std::string& value) {
    if (key == "model") {
        c.model = model_from_name(value);
    } else if (key == "seed") {
        c.seed = static_cast<std::uint64_t>(to_double(value, key));
    } else if (key == "geometry.tx_height_m") {
        c.geometry.tx_height_m = to_double(value, key);
    } else if (key == "geometry.rx_height_m") {
        c.geometry.rx_height_m = to_double(value, key);
    } else if (key == "geometry.frequency_mhz") {
        c.geometry.frequency_MHz = to_double(value, key);
    } else if (key == "geometry.distance_m") {
        c.geometry.path_length_m = to_double(value, key);
    } else if (key == "geometry.polarization") {
        if (value == "V" || value == "vertical") {
            c.geometry.polarization = terrain::Polarization::Vertical;
        } else if (value == "H" || value == "horizontal") {
            c.geometry.polarization = terrain::Polarization::Horizontal;
        } else {
            throw parse_error(0, "polarization must be V or H, got '" + value + "'");
        }
    } else if (key == "terrain.profile") {
        c.profile_path = value;
    } else if (key == "ground.preset") {
        c.ground = proploss::ground_preset(value);
    } else if (key == "ground.permittivity") {
        c.ground.relative_permittivity = to_double(value, key);
    } else if (key == "ground.conductivity") {
        c.ground.conductivity_S_per_m = to_double(value, key);
    } else if (key == "atmosphere.refractivity_n") {
        c.atmosphere.surface_refractivity_N = to_double(value, key);
    } else if (key == "atmosphere.humidity_g_m3") {
        c.atmosphere.humidity_g_per_m3 = to_double(value, key);
    } else if (key == "atmosphere.climate_m_db") {
        c.atmosphere.climate_M_dB = to_double(value, key);
    } else if (key == "tirem.local_screen_db") {
        c.terrain_options.local_screen_dB = to_double(value, key);
    } else if (key == "tirem.reflection_db") {
        c.terrain_options.reflection_dB = to_double(value, key);
    } else if (key == "tirem.tropo_ln_db") {
        c.terrain_options.tropo_LN_dB = to_double(value, key);
    } else if (key == "tirem.tropo_lc_db") {
        c.terrain_options.tropo_LC_dB = to_double(value, key);
    } else if (key == "budget.tx_power_w") {
        c.budget.tx_power_W = to_double(value, key);
    } else if (key == "budget.gain_tx") {
        c.budget.gain_tx = to_double(value, key);
    } else if (key == "budget.gain_rx") {
        c.budget.gain_rx = to_double(value, key);
    } else if (key == "budget.system_loss") {
        c.budget.system_loss = to_double(value, key);
    } else if (key == "traffic.packet_size_bits") {
        c.traffic.packet_size_bits = to_double(value, key);
    } else if (key == "traffic.interarrival_s") {
        c.traffic.interarrival_s = to_double(value, key);
    } else if (key == "traffic.start_time_s") {
        c.traffic.start_time_s = to_double(value, key);
    } else if (key == "traffic.horizon_s") {
        c.traffic.horizon_s = to_double(value, key);
    } else if (key == "radio.data_rate_bps") {
        c.radio.data_rate_bps = to_double(value, key);
    } else if (key == "radio.bandwidth_khz") {
        c.radio.bandwidth_kHz = to_double(value, key);
    } else if (key == "radio.ber_threshold") {
        c.radio.ber_threshold = to_double(value, key);
    } else if (key == "radio.noise_figure_db") {
        c.radio.noise_figure_dB = to_double(value, key);
    } else if (key == "radio.modulation") {
        if (value != "bpsk") {
            throw parse_error(0, "unsupported modulation '" + value + "'");
        }
        c.radio.modulation = linksim::Modulation::Bpsk;
    } else if (key == "fading.enabled") {
        c.fading_enabled = to_bool(value, key);
    } else if (key == "fading.k") {
        c.rician.K = to_double(value, key);
    } else if (key == "fading.sigma") {
        c.rician.sigma = to_double(value, key);
    } else if (key == "fading.max_velocity_m_s") {
        c.rician.max_velocity_m_per_s = to_double(value, key);
    } else if (key == "fading.table_offset") {
        c.rician.envelope_table_offset = static_cast<std::int64_t>(to_double(value, key));
    } else if (key == "tworay.strict") {
        c.two_ray_form = to_bool(value, key) ? proploss::TwoRayForm::LinearHeights
                                             : proploss::TwoRayForm::Standard;
    } else {
        throw parse_error(0, "unknown configuration key '" + key + "'");
    }
}

ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw parse_error(line_no,
                              "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            apply_key(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const parse_error& e) {
            throw parse_error(line_no, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return config;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    return parse_config(in);
}

PreparedScenario prepare(const ScenarioConfig& config) {
    PreparedScenario prepared{config, std::nullopt};
    if (config.model == Model::Tirem) {
        if (!config.profile_path.has_value()) {
            throw domain_error("terrain model requires terrain.profile");
        }
        prepared.profile = terrain::load_profile_file(*config.profile_path);
    }
    prepared.config.geometry.validate();
    return prepared;
}

SweepPoint PreparedScenario::loss_at(double distance_m) const {
    if (!(distance_m > 0.0)) throw domain_error("distance must be positive");
    const auto& g = config.geometry;
    const double wavelength = g.wavelength_m();
    SweepPoint point{distance_m, 0.0, proploss::LossMode::LineOfSight};

    switch (config.model) {
        case Model::FreeSpace:
            point.loss_dB = proploss::free_space_loss_dB(wavelength, distance_m);
            break;
        case Model::TwoRay: {
            const proploss::LinkBudget unit{};
            const double ratio = proploss::two_ray_received_power(
                unit, g.tx_height_m, g.rx_height_m, distance_m, config.two_ray_form);
            point.loss_dB = -10.0 * std::log10(ratio);
            break;
        }
        case Model::LosTwoRay: {
            const double r1 = std::hypot(distance_m, g.tx_height_m - g.rx_height_m);
            const double r2 = std::hypot(distance_m, g.tx_height_m + g.rx_height_m);
            const double grazing = std::atan2(g.tx_height_m + g.rx_height_m, distance_m);
            const auto refl = proploss::reflection_coefficient(config.ground, g.polarization,
                                                               grazing, g.frequency_MHz);
            point.loss_dB =
                -10.0 * std::log10(proploss::los_two_ray_ratio(wavelength, r1, r2, refl));
            break;
        }
        case Model::Tirem: {
            auto geom = g;
            geom.path_length_m = distance_m;
            const auto breakdown =
                proploss::tirem_path_loss(profile->stretched_to(distance_m), geom,
                                          config.ground, config.atmosphere,
                                          config.terrain_options);
            point.loss_dB = breakdown.total_dB;
            point.mode = breakdown.mode;
            break;
        }
    }
    return point;
}

double PreparedScenario::received_power_W(double distance_m) const {
    const auto& b = config.budget;
    switch (config.model) {
        case Model::FreeSpace:
            return proploss::free_space_received_power(b, config.geometry.wavelength_m(),
                                                       distance_m);
        case Model::TwoRay:
            return proploss::two_ray_received_power(b, config.geometry.tx_height_m,
                                                    config.geometry.rx_height_m, distance_m,
                                                    config.two_ray_form);
        default: {
            const auto point = loss_at(distance_m);
            return b.tx_power_W * b.gain_tx * b.gain_rx / b.system_loss *
                   std::pow(10.0, -point.loss_dB / 10.0);
        }
    }
}

std::vector<SweepPoint> sweep(const PreparedScenario& scenario, double d_min_m,
                              double d_max_m, std::size_t n_points, bool log_spacing) {
    if (!(d_min_m > 0.0) || !(d_max_m > d_min_m)) {
        throw domain_error("sweep needs 0 < d_min < d_max");
    }
    if (n_points < 2) throw domain_error("sweep needs at least 2 grid points");

    std::vector<SweepPoint> points;
    points.reserve(n_points);
    const double steps = static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double frac = static_cast<double>(i) / steps;
        const double d = log_spacing
                             ? d_min_m * std::pow(d_max_m / d_min_m, frac)
                             : d_min_m + (d_max_m - d_min_m) * frac;
        points.push_back(scenario.loss_at(d));
    }
    return points;
}

linksim::LinkStats run(const PreparedScenario& scenario) {
    const auto& config = scenario.config;
    const double distance = config.geometry.path_length_m;
    const double rx_power = scenario.received_power_W(distance);

    linksim::Scenario sim;
    sim.traffic = config.traffic;
    sim.radio = config.radio;
    sim.power_model = [rx_power](double) { return rx_power; };
    if (config.fading_enabled) {
        sim.fading = config.rician;
        sim.wavelength_m = config.geometry.wavelength_m();
    }
    return linksim::run_link_simulation(sim, config.seed);
}

void write_sweep_csv(const std::vector<SweepPoint>& points, std::ostream& out) {
    out << "distance_m,loss_db,mode\n";
    for (const auto& p : points) {
        out << num(p.distance_m) << ',' << num(p.loss_dB) << ',' << proploss::to_string(p.mode)
            << '\n';
    }
}

void write_records_csv(const linksim::LinkStats& stats, std::ostream& out) {
    out << "t_s,rx_power_dbm,snr_db,ber,verdict\n";
    for (const auto& r : stats.records) {
        out << num(r.t_s) << ',' << num(r.rx_power_dBm) << ',' << num(r.snr_dB) << ','
            << num(r.ber) << ',' << linksim::to_string(r.verdict) << '\n';
    }
}

void write_stats_csv(const linksim::LinkStats& stats, std::ostream& out) {
    out << "packets_sent,packets_received,packets_dropped,throughput_bps\n";
    out << stats.packets_sent << ',' << stats.packets_received << ',' << stats.packets_dropped
        << ',' << num(stats.throughput_bps) << '\n';
}

void write_envelope_csv(const fading::EnvelopeTrace& trace, std::ostream& out) {
    out << "t_s,power_norm\n";
    for (const auto& s : trace.samples) {
        out << num(s.t_s) << ',' << num(s.power_norm) << '\n';
    }
}

void write_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open '" + tmp + "' for writing");
        out << contents;
        if (!out) {
            out.close();
            std::remove(tmp.c_str());
            throw io_error("failed writing '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw io_error("cannot move output into place at '" + path + "'");
    }
}

}  // namespace rps::scenario
