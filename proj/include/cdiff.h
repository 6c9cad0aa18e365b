/* cdiff — finite-propagation-speed diffusion toolkit, C interface.
 *
 * The core is C++; this header is the stable shared-library surface. All
 * entry points return a cdiff_status; results travel through out-parameters.
 * Objects are opaque handles owned by the library and released with the
 * matching *_destroy call. On failure, cdiff_last_error() returns a
 * thread-local description of the most recent error in the calling thread.
 */
#ifndef CDIFF_H
#define CDIFF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CDIFF_API __declspec(dllexport)
#else
#define CDIFF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cdiff_status {
    CDIFF_OK = 0,
    CDIFF_ERR_INVALID_ARGUMENT = 1, /* bad parameter / configuration */
    CDIFF_ERR_DOMAIN = 2,           /* input outside the mathematical domain */
    CDIFF_ERR_CONVERGENCE = 3,      /* series/iteration tolerance not reached */
    CDIFF_ERR_STAGNATION = 4,       /* solver residual in the numerical null space */
    CDIFF_ERR_IO = 5,               /* file read/write failure */
    CDIFF_ERR_INTERNAL = 6          /* invariant violation inside the library */
} cdiff_status;

typedef struct cdiff_grid cdiff_grid;       /* 2D concentration field */
typedef struct cdiff_upsilon cdiff_upsilon; /* radial profile evaluator */

/* Model parameters: propagation speed c > 0, step time tau > 0, space
 * dimension dim >= 1. The derived diffusivity is c^2 tau / (2 dim). */
typedef struct cdiff_params {
    double c;
    double tau;
    int dim;
} cdiff_params;

typedef struct cdiff_noise_spec {
    double radius_rel_perturbation; /* e.g. 0.0025 for +-0.25% */
    double data_noise_level;        /* relative L2 noise level delta */
    uint64_t seed;
    int per_step_perturbation; /* 0: fresh jitter per particle move (default) */
} cdiff_noise_spec;

typedef struct cdiff_landweber_config {
    double eta;         /* discrepancy factor >= 2 */
    double delta;       /* relative L2 noise level */
    int max_iters;      /* >= 1 */
    int spectral_path;  /* 0: circle-quadrature forward, 1: spectral */
    int stencil_points; /* quadrature nodes per circle (spatial path) */
} cdiff_landweber_config;

typedef struct cdiff_landweber_stats {
    int iterations;            /* index of the reported residual history tail */
    int stopped_by_discrepancy;/* 1 if the discrepancy test fired */
    double final_residual;     /* ||F(u) - w||_2 at the returned iterate */
} cdiff_landweber_stats;

CDIFF_API const char* cdiff_version(void);
CDIFF_API const char* cdiff_status_name(cdiff_status status);
CDIFF_API const char* cdiff_last_error(void);

/* ---- radial profile family ------------------------------------------- */

CDIFF_API cdiff_status cdiff_upsilon_create(int dim, double truncation_tol,
                                            int max_terms, cdiff_upsilon** out);
CDIFF_API void cdiff_upsilon_destroy(cdiff_upsilon* ev);
CDIFF_API cdiff_status cdiff_upsilon_eval(const cdiff_upsilon* ev, double t, double* out);
CDIFF_API cdiff_status cdiff_upsilon_eval_derivative(const cdiff_upsilon* ev, double t,
                                                     double* out);
/* Roots of the profile (derivative != 0) or its derivative in [a, b]. Writes
 * up to capacity roots; *count receives the number found. */
CDIFF_API cdiff_status cdiff_upsilon_zeros_in(const cdiff_upsilon* ev, double a, double b,
                                              int derivative, double* roots,
                                              size_t capacity, size_t* count);
CDIFF_API cdiff_status cdiff_upsilon_envelope_bound(const cdiff_upsilon* ev, double t,
                                                    double* out);

/* ---- spectral Green functions ----------------------------------------- */

CDIFF_API cdiff_status cdiff_ghat_causal(cdiff_params p, double k, double t, double* out);
CDIFF_API cdiff_status cdiff_ghat_standard(cdiff_params p, double k, double t, double* out);
CDIFF_API cdiff_status cdiff_ghat_perturbed(cdiff_params p, double k, double t, double* out);
CDIFF_API cdiff_status cdiff_zero_set(cdiff_params p, double t, double k_max,
                                      double* zeros, size_t capacity, size_t* count);
CDIFF_API cdiff_status cdiff_diffusivity(cdiff_params p, double* out);

/* ---- grids ------------------------------------------------------------- */

CDIFF_API cdiff_status cdiff_grid_create(int rows, int cols, double dx, double origin_x,
                                         double origin_y, cdiff_grid** out);
CDIFF_API cdiff_status cdiff_grid_clone(const cdiff_grid* g, cdiff_grid** out);
CDIFF_API void cdiff_grid_destroy(cdiff_grid* g);
CDIFF_API int cdiff_grid_rows(const cdiff_grid* g);
CDIFF_API int cdiff_grid_cols(const cdiff_grid* g);
CDIFF_API double cdiff_grid_dx(const cdiff_grid* g);
CDIFF_API double cdiff_grid_origin_x(const cdiff_grid* g);
CDIFF_API double cdiff_grid_origin_y(const cdiff_grid* g);
/* Row-major storage of rows*cols doubles, valid until the grid is destroyed. */
CDIFF_API double* cdiff_grid_data(cdiff_grid* g);
CDIFF_API const double* cdiff_grid_data_const(const cdiff_grid* g);
CDIFF_API double cdiff_grid_total_mass(const cdiff_grid* g);
CDIFF_API cdiff_status cdiff_grid_load(const char* path, cdiff_grid** out);
CDIFF_API cdiff_status cdiff_grid_save(const cdiff_grid* g, const char* path,
                                       int dimension_tag);
CDIFF_API cdiff_status cdiff_grid_save_pgm(const cdiff_grid* g, const char* path);
/* name: "question-mark" | "gaussian-blob" | "unit-pixel" */
CDIFF_API cdiff_status cdiff_grid_make_synthetic(const char* name, int rows, int cols,
                                                 double dx, cdiff_grid** out);
CDIFF_API cdiff_status cdiff_grid_rel_l2_distance(const cdiff_grid* a, const cdiff_grid* b,
                                                  double* out);

/* ---- forward evolution -------------------------------------------------- */

/* Circle-quadrature stepping; *support_clipped (optional) reports when the
 * grid was too small to contain the expanded support. */
CDIFF_API cdiff_status cdiff_evolve_spatial(const cdiff_grid* u, cdiff_params p, double T,
                                            int stencil_points, cdiff_grid** out,
                                            int* support_clipped);
CDIFF_API cdiff_status cdiff_evolve_spectral(const cdiff_grid* u, cdiff_params p, double T,
                                             cdiff_grid** out);
/* Time derivative of the evolved state at T (spectral realization). */
CDIFF_API cdiff_status cdiff_evolve_spectral_dt(const cdiff_grid* u, cdiff_params p,
                                                double T, cdiff_grid** out);
/* Forward-Euler reference for the classical diffusion model; dt <= stability
 * bound dx^2/(2 dim D0). Pass dt <= 0 to use the bound itself. */
CDIFF_API cdiff_status cdiff_evolve_euler(const cdiff_grid* u, cdiff_params p, double T,
                                          double dt, cdiff_grid** out);

/* ---- particle simulator -------------------------------------------------- */

CDIFF_API cdiff_status cdiff_simulate_data(const cdiff_grid* u, cdiff_params p, double T,
                                           int M, cdiff_noise_spec noise, uint64_t seed,
                                           cdiff_grid** out);
/* Adds positive-mean uniform noise scaled to the requested relative L2 level
 * (keyed by noise.seed). */
CDIFF_API cdiff_status cdiff_add_data_noise(const cdiff_grid* w, cdiff_noise_spec noise,
                                            cdiff_grid** out);

/* ---- inversion ------------------------------------------------------------ */

/* Projected Landweber with discrepancy stopping. u0 may be NULL (zero start).
 * csv_log_path may be NULL; otherwise one CSV row per iteration is written:
 * iteration,residual_norm,omega,min_value,mass. */
CDIFF_API cdiff_status cdiff_solve_landweber(const cdiff_grid* w, cdiff_params p, double T,
                                             cdiff_landweber_config cfg,
                                             const cdiff_grid* u0,
                                             const char* csv_log_path, cdiff_grid** out,
                                             cdiff_landweber_stats* stats);
/* Spectral Moore-Penrose inverse with zero masking; zero_mask_tol <= 0 picks
 * the default 1e-3 * max |multiplier|. */
CDIFF_API cdiff_status cdiff_moore_penrose(const cdiff_grid* w, cdiff_params p, double T,
                                           double zero_mask_tol, cdiff_grid** out,
                                           double* masked_fraction);
/* Exact early-time inversion from the state and its time derivative. */
CDIFF_API cdiff_status cdiff_time_reversal(const cdiff_grid* w, const cdiff_grid* w2,
                                           cdiff_params p, double T,
                                           double band_split_tol, cdiff_grid** out);

#ifdef __cplusplus
}
#endif

#endif /* CDIFF_H */
