#include "rpsim.h"

#include <complex>
#include <exception>
#include <sstream>
#include <string>

#include "core/fading.hpp"
#include "core/linksim.hpp"
#include "core/proploss.hpp"
#include "core/scenario.hpp"
#include "core/terrain.hpp"

using rps::domain_error;
using rps::io_error;
using rps::parse_error;
using rps::range_error;

struct rps_profile {
    rps::terrain::TerrainProfile profile;
};

struct rps_fading {
    rps::fading::FadingProcess process;
    double dt_hint;
    std::int64_t table_offset;
};

struct rps_scenario {
    rps::scenario::ScenarioConfig config;
};

namespace {

thread_local std::string g_last_error = "ok";

rps_status fail(rps_status status, const std::exception& e) {
    g_last_error = e.what();
    return status;
}

rps_status usage(const char* message) {
    g_last_error = message;
    return RPS_ERR_USAGE;
}

// Runs `body` and maps the core exception taxonomy onto status codes.
template <typename Fn>
rps_status guarded(Fn&& body) {
    try {
        body();
        return RPS_OK;
    } catch (const range_error& e) {
        return fail(RPS_ERR_RANGE, e);
    } catch (const parse_error& e) {
        return fail(RPS_ERR_PARSE, e);
    } catch (const io_error& e) {
        return fail(RPS_ERR_IO, e);
    } catch (const domain_error& e) {
        return fail(RPS_ERR_DOMAIN, e);
    } catch (const std::exception& e) {
        return fail(RPS_ERR_DOMAIN, e);
    }
}

rps::terrain::LinkGeometry to_geometry(const rps_geometry& g) {
    return {
        .tx_height_m = g.tx_height_m,
        .rx_height_m = g.rx_height_m,
        .frequency_MHz = g.frequency_mhz,
        .polarization = g.vertical_polarization != 0
                            ? rps::terrain::Polarization::Vertical
                            : rps::terrain::Polarization::Horizontal,
        .path_length_m = g.path_length_m,
    };
}

}  // namespace

extern "C" {

const char* rps_last_error(void) { return g_last_error.c_str(); }

rps_status rps_profile_load(const char* path, rps_profile** out) {
    if (path == nullptr || out == nullptr) return usage("null argument");
    return guarded([&] {
        *out = new rps_profile{rps::terrain::load_profile_file(path)};
    });
}

rps_status rps_profile_parse(const char* csv_text, rps_profile** out) {
    if (csv_text == nullptr || out == nullptr) return usage("null argument");
    return guarded([&] {
        std::istringstream stream{std::string(csv_text)};
        *out = new rps_profile{rps::terrain::load_profile(stream)};
    });
}

void rps_profile_free(rps_profile* profile) { delete profile; }

size_t rps_profile_point_count(const rps_profile* profile) {
    return profile != nullptr ? profile->profile.size() : 0;
}

double rps_profile_length_m(const rps_profile* profile) {
    return profile != nullptr ? profile->profile.length_m() : 0.0;
}

rps_status rps_los_clearance(const rps_profile* profile, const rps_geometry* geometry,
                             rps_obstacle* out) {
    if (profile == nullptr || geometry == nullptr || out == nullptr) {
        return usage("null argument");
    }
    return guarded([&] {
        const auto report =
            rps::terrain::los_clearance(profile->profile, to_geometry(*geometry));
        out->obstructed = report.has_los ? 0 : 1;
        if (report.dominant_obstacle.has_value()) {
            out->h_m = report.dominant_obstacle->h_m;
            out->d_tx_m = report.dominant_obstacle->d_T_m;
            out->d_rx_m = report.dominant_obstacle->d_R_m;
        } else {
            out->h_m = 0.0;
            out->d_tx_m = 0.0;
            out->d_rx_m = 0.0;
        }
    });
}

rps_status rps_diffraction_parameter(double h_m, double d_tx_m, double d_rx_m,
                                     double wavelength_m, double* out_nu) {
    if (out_nu == nullptr) return usage("null output");
    return guarded([&] {
        *out_nu = rps::terrain::diffraction_parameter({h_m, d_tx_m, d_rx_m}, wavelength_m);
    });
}

rps_status rps_free_space_power(double tx_power_w, double gain_tx, double gain_rx,
                                double system_loss, double wavelength_m, double distance_m,
                                double* out_w) {
    if (out_w == nullptr) return usage("null output");
    return guarded([&] {
        *out_w = rps::proploss::free_space_received_power(
            {tx_power_w, gain_tx, gain_rx, system_loss}, wavelength_m, distance_m);
    });
}

rps_status rps_two_ray_power(double tx_power_w, double gain_tx, double gain_rx,
                             double tx_height_m, double rx_height_m, double distance_m,
                             int linear_heights, double* out_w) {
    if (out_w == nullptr) return usage("null output");
    return guarded([&] {
        *out_w = rps::proploss::two_ray_received_power(
            {tx_power_w, gain_tx, gain_rx, 1.0}, tx_height_m, rx_height_m, distance_m,
            linear_heights != 0 ? rps::proploss::TwoRayForm::LinearHeights
                              : rps::proploss::TwoRayForm::Standard);
    });
}

rps_status rps_los_two_ray_ratio(double wavelength_m, double r1_m, double r2_m,
                                 double refl_re, double refl_im, double* out_ratio) {
    if (out_ratio == nullptr) return usage("null output");
    return guarded([&] {
        *out_ratio = rps::proploss::los_two_ray_ratio(wavelength_m, r1_m, r2_m,
                                                      {refl_re, refl_im});
    });
}

rps_status rps_knife_edge_loss(double nu, double* out_db) {
    if (out_db == nullptr) return usage("null output");
    return guarded([&] { *out_db = rps::proploss::knife_edge_loss(nu); });
}

rps_status rps_troposcatter_loss(double m_db, double frequency_mhz, double distance_km,
                                 double scatter_angle_mrad, double ln_db, double lc_db,
                                 double gain_tx_dbi, double gain_rx_dbi, double* out_db) {
    if (out_db == nullptr) return usage("null output");
    return guarded([&] {
        *out_db = rps::proploss::troposcatter_loss({m_db, frequency_mhz, distance_km,
                                                    scatter_angle_mrad, ln_db, lc_db,
                                                    gain_tx_dbi, gain_rx_dbi});
    });
}

rps_status rps_reflection_coefficient(double permittivity, double conductivity_s_m,
                                      int vertical_polarization, double grazing_angle_rad,
                                      double frequency_mhz, double* out_re, double* out_im) {
    if (out_re == nullptr || out_im == nullptr) return usage("null output");
    return guarded([&] {
        const auto r = rps::proploss::reflection_coefficient(
            {permittivity, conductivity_s_m},
            vertical_polarization != 0 ? rps::terrain::Polarization::Vertical
                                       : rps::terrain::Polarization::Horizontal,
            grazing_angle_rad, frequency_mhz);
        *out_re = r.real();
        *out_im = r.imag();
    });
}

rps_status rps_ground_preset(const char* name, double* out_permittivity,
                             double* out_conductivity) {
    if (name == nullptr || out_permittivity == nullptr || out_conductivity == nullptr) {
        return usage("null argument");
    }
    return guarded([&] {
        const auto preset = rps::proploss::ground_preset(name);
        *out_permittivity = preset.relative_permittivity;
        *out_conductivity = preset.conductivity_S_per_m;
    });
}

rps_status rps_tirem_path_loss(const rps_profile* profile, const rps_geometry* geometry,
                               double permittivity, double conductivity_s_m,
                               const rps_atmosphere* atmosphere,
                               const rps_terrain_options* options, rps_breakdown* out) {
    if (profile == nullptr || geometry == nullptr || atmosphere == nullptr ||
        out == nullptr) {
        return usage("null argument");
    }
    return guarded([&] {
        rps::proploss::TerrainLossOptions opts;
        if (options != nullptr) {
            opts = {options->local_screen_db, options->reflection_db, options->tropo_ln_db,
                    options->tropo_lc_db};
        }
        const auto b = rps::proploss::tirem_path_loss(
            profile->profile, to_geometry(*geometry), {permittivity, conductivity_s_m},
            {atmosphere->refractivity_n, atmosphere->humidity_g_m3, atmosphere->climate_m_db},
            opts);
        out->l_o_db = b.L_o_dB;
        out->l_l_db = b.L_l_dB;
        out->l_md_db = b.L_md_dB;
        out->l_r_db = b.L_r_dB;
        out->total_db = b.total_dB;
        out->mode = static_cast<rps_loss_mode>(b.mode);
    });
}

rps_status rps_fading_create(double k_factor, double sigma, double max_velocity_m_s,
                             double wavelength_m, int64_t table_offset, uint64_t seed,
                             rps_fading** out) {
    if (out == nullptr) return usage("null output");
    return guarded([&] {
        rps::fading::RicianParameters params{k_factor, sigma, max_velocity_m_s, table_offset};
        *out = new rps_fading{
            rps::fading::FadingProcess(params, wavelength_m, seed), 0.0, table_offset};
    });
}

void rps_fading_free(rps_fading* fading) { delete fading; }

rps_status rps_fading_power_at(const rps_fading* fading, double t_s, double* out) {
    if (fading == nullptr || out == nullptr) return usage("null argument");
    return guarded([&] { *out = fading->process.power_at(t_s); });
}

rps_status rps_fading_write_trace(const rps_fading* fading, double dt_s, size_t n_samples,
                                  const char* out_path) {
    if (fading == nullptr || out_path == nullptr) return usage("null argument");
    return guarded([&] {
        if (!(dt_s > 0.0)) throw domain_error("sample interval must be positive");
        if (n_samples < 1) throw domain_error("need at least one sample");
        rps::fading::EnvelopeTrace trace;
        trace.samples.reserve(n_samples);
        for (size_t i = 0; i < n_samples; ++i) {
            const double t = static_cast<double>(i) * dt_s;
            const double t_rot =
                static_cast<double>(static_cast<std::int64_t>(i) + fading->table_offset) * dt_s;
            trace.samples.push_back({t, fading->process.power_at(t_rot)});
        }
        std::ostringstream csv;
        rps::scenario::write_envelope_csv(trace, csv);
        rps::scenario::write_file(out_path, csv.str());
    });
}

rps_status rps_scenario_new(rps_scenario** out) {
    if (out == nullptr) return usage("null output");
    *out = new rps_scenario{};
    return RPS_OK;
}

rps_status rps_scenario_load(const char* config_path, rps_scenario** out) {
    if (config_path == nullptr || out == nullptr) return usage("null argument");
    return guarded([&] {
        *out = new rps_scenario{rps::scenario::load_config_file(config_path)};
    });
}

rps_status rps_scenario_set(rps_scenario* scenario, const char* key, const char* value) {
    if (scenario == nullptr || key == nullptr || value == nullptr) {
        return usage("null argument");
    }
    return guarded([&] { rps::scenario::apply_key(scenario->config, key, value); });
}

void rps_scenario_free(rps_scenario* scenario) { delete scenario; }

rps_status rps_scenario_sweep(const rps_scenario* scenario, double d_min_m, double d_max_m,
                              size_t n_points, int log_spacing, const char* out_path) {
    if (scenario == nullptr || out_path == nullptr) return usage("null argument");
    return guarded([&] {
        const auto prepared = rps::scenario::prepare(scenario->config);
        const auto points =
            rps::scenario::sweep(prepared, d_min_m, d_max_m, n_points, log_spacing != 0);
        std::ostringstream csv;
        rps::scenario::write_sweep_csv(points, csv);
        rps::scenario::write_file(out_path, csv.str());
    });
}

rps_status rps_scenario_run(const rps_scenario* scenario, const char* records_path,
                            const char* stats_path, rps_link_stats* out_stats) {
    if (scenario == nullptr) return usage("null argument");
    return guarded([&] {
        const auto prepared = rps::scenario::prepare(scenario->config);
        const auto stats = rps::scenario::run(prepared);
        if (records_path != nullptr) {
            std::ostringstream csv;
            rps::scenario::write_records_csv(stats, csv);
            rps::scenario::write_file(records_path, csv.str());
        }
        if (stats_path != nullptr) {
            std::ostringstream csv;
            rps::scenario::write_stats_csv(stats, csv);
            rps::scenario::write_file(stats_path, csv.str());
        }
        if (out_stats != nullptr) {
            out_stats->packets_sent = stats.packets_sent;
            out_stats->packets_received = stats.packets_received;
            out_stats->packets_dropped = stats.packets_dropped;
            out_stats->throughput_bps = stats.throughput_bps;
        }
    });
}

}  // extern "C"
