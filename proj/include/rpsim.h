/*
 * rpsim — terrain-aware radio propagation and wireless-link simulation.
 *
 * C API over the C++ core. All functions return a status code; on any
 * non-zero status, rps_last_error() yields a thread-local description of
 * what went wrong. Handles are opaque and owned by the caller via the
 * matching *_free function.
 */
#ifndef RPSIM_H
#define RPSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rps_status {
    RPS_OK = 0,
    RPS_ERR_USAGE = 1,  /* bad argument combination */
    RPS_ERR_RANGE = 2,  /* parameter outside its documented validity range */
    RPS_ERR_DOMAIN = 3, /* mathematically invalid input */
    RPS_ERR_PARSE = 4,  /* malformed text input */
    RPS_ERR_IO = 5      /* filesystem failure */
} rps_status;

/* Thread-local message for the most recent failing call. Never NULL. */
const char* rps_last_error(void);

/* ---- terrain profiles ------------------------------------------------ */

typedef struct rps_profile rps_profile;

rps_status rps_profile_load(const char* path, rps_profile** out);
rps_status rps_profile_parse(const char* csv_text, rps_profile** out);
void rps_profile_free(rps_profile* profile);

size_t rps_profile_point_count(const rps_profile* profile);
double rps_profile_length_m(const rps_profile* profile);

typedef struct rps_geometry {
    double tx_height_m;
    double rx_height_m;
    double frequency_mhz;
    int vertical_polarization; /* 1 = vertical, 0 = horizontal */
    double path_length_m;
} rps_geometry;

typedef struct rps_obstacle {
    int obstructed;   /* 0 when the path has line of sight */
    double h_m;       /* height above the direct sightline; negative = clearance */
    double d_tx_m;
    double d_rx_m;
} rps_obstacle;

rps_status rps_los_clearance(const rps_profile* profile, const rps_geometry* geometry,
                             rps_obstacle* out);

rps_status rps_diffraction_parameter(double h_m, double d_tx_m, double d_rx_m,
                                     double wavelength_m, double* out_nu);

/* ---- path-loss formulas ---------------------------------------------- */

rps_status rps_free_space_power(double tx_power_w, double gain_tx, double gain_rx,
                                double system_loss, double wavelength_m, double distance_m,
                                double* out_w);

/* linear_heights = 0: h_t^2 h_r^2 / d^4; 1: h_t h_r / d^4 variant. */
rps_status rps_two_ray_power(double tx_power_w, double gain_tx, double gain_rx,
                             double tx_height_m, double rx_height_m, double distance_m,
                             int linear_heights, double* out_w);

rps_status rps_los_two_ray_ratio(double wavelength_m, double r1_m, double r2_m,
                                 double refl_re, double refl_im, double* out_ratio);

rps_status rps_knife_edge_loss(double nu, double* out_db);

rps_status rps_troposcatter_loss(double m_db, double frequency_mhz, double distance_km,
                                 double scatter_angle_mrad, double ln_db, double lc_db,
                                 double gain_tx_dbi, double gain_rx_dbi, double* out_db);

rps_status rps_reflection_coefficient(double permittivity, double conductivity_s_m,
                                      int vertical_polarization, double grazing_angle_rad,
                                      double frequency_mhz, double* out_re, double* out_im);

/* Fills permittivity/conductivity for a named preset: average, poor,
 * good, fresh_water, sea_water. */
rps_status rps_ground_preset(const char* name, double* out_permittivity,
                             double* out_conductivity);

typedef struct rps_atmosphere {
    double refractivity_n;
    double humidity_g_m3;
    double climate_m_db;
} rps_atmosphere;

typedef struct rps_terrain_options {
    double local_screen_db;
    double reflection_db;
    double tropo_ln_db;
    double tropo_lc_db;
} rps_terrain_options;

typedef enum rps_loss_mode {
    RPS_MODE_LINE_OF_SIGHT = 0,
    RPS_MODE_DIFFRACTION = 1,
    RPS_MODE_TROPOSCATTER = 2,
    RPS_MODE_COMBINED = 3
} rps_loss_mode;

typedef struct rps_breakdown {
    double l_o_db;
    double l_l_db;
    double l_md_db;
    double l_r_db;
    double total_db;
    rps_loss_mode mode;
} rps_breakdown;

/* options may be NULL for all-zero extra loss terms. */
rps_status rps_tirem_path_loss(const rps_profile* profile, const rps_geometry* geometry,
                               double permittivity, double conductivity_s_m,
                               const rps_atmosphere* atmosphere,
                               const rps_terrain_options* options, rps_breakdown* out);

/* ---- Rician fading --------------------------------------------------- */

typedef struct rps_fading rps_fading;

rps_status rps_fading_create(double k_factor, double sigma, double max_velocity_m_s,
                             double wavelength_m, int64_t table_offset, uint64_t seed,
                             rps_fading** out);
void rps_fading_free(rps_fading* fading);

/* Normalized (unit-mean) power envelope at time t. */
rps_status rps_fading_power_at(const rps_fading* fading, double t_s, double* out);

/* Writes a `t_s,power_norm` CSV trace of n samples spaced dt apart. */
rps_status rps_fading_write_trace(const rps_fading* fading, double dt_s, size_t n_samples,
                                  const char* out_path);

/* ---- scenarios ------------------------------------------------------- */

typedef struct rps_scenario rps_scenario;

rps_status rps_scenario_new(rps_scenario** out);
rps_status rps_scenario_load(const char* config_path, rps_scenario** out);
/* Applies one `section.key` assignment, same keys as the config file. */
rps_status rps_scenario_set(rps_scenario* scenario, const char* key, const char* value);
void rps_scenario_free(rps_scenario* scenario);

/* Writes `distance_m,loss_db,mode` rows over the distance grid. */
rps_status rps_scenario_sweep(const rps_scenario* scenario, double d_min_m, double d_max_m,
                              size_t n_points, int log_spacing, const char* out_path);

typedef struct rps_link_stats {
    uint64_t packets_sent;
    uint64_t packets_received;
    uint64_t packets_dropped;
    double throughput_bps;
} rps_link_stats;

/* Runs the packet pipeline; records_path/stats_path may be NULL to skip
 * the corresponding CSV. */
rps_status rps_scenario_run(const rps_scenario* scenario, const char* records_path,
                            const char* stats_path, rps_link_stats* out_stats);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RPSIM_H */
