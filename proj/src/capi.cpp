#include "cdiff.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <stdexcept>
#include <string>

#include "cdiff/errors.hpp"
#include "cdiff/forward.hpp"
#include "cdiff/green.hpp"
#include "cdiff/grid.hpp"
#include "cdiff/grid_io.hpp"
#include "cdiff/inversion.hpp"
#include "cdiff/params.hpp"
#include "cdiff/particle.hpp"
#include "cdiff/synthetic.hpp"
#include "cdiff/upsilon.hpp"

struct cdiff_grid {
    cdiff::Grid2D g;
};

struct cdiff_upsilon {
    cdiff::UpsilonEvaluator ev;
};

namespace {

thread_local std::string t_last_error;

void set_error(const char* what) { t_last_error = what ? what : "unknown error"; }

// Maps C++ failures onto the C status codes; every API body runs inside this.
template <typename Fn>
cdiff_status guarded(Fn&& fn) {
    try {
        fn();
        return CDIFF_OK;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return CDIFF_ERR_INVALID_ARGUMENT;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return CDIFF_ERR_DOMAIN;
    } catch (const cdiff::ConvergenceError& e) {
        set_error(e.what());
        return CDIFF_ERR_CONVERGENCE;
    } catch (const cdiff::StagnationError& e) {
        set_error(e.what());
        return CDIFF_ERR_STAGNATION;
    } catch (const std::logic_error& e) {
        set_error(e.what());
        return CDIFF_ERR_INTERNAL;
    } catch (const std::bad_alloc& e) {
        set_error(e.what());
        return CDIFF_ERR_INTERNAL;
    } catch (const std::exception& e) {
        // runtime_error and friends: I/O is the dominant source here
        set_error(e.what());
        return CDIFF_ERR_IO;
    } catch (...) {
        set_error("unknown error");
        return CDIFF_ERR_INTERNAL;
    }
}

cdiff::DiffusionParams convert(cdiff_params p) {
    return cdiff::DiffusionParams(p.c, p.tau, p.dim);
}

cdiff::NoiseSpec convert(cdiff_noise_spec n) {
    cdiff::NoiseSpec spec;
    spec.radius_rel_perturbation = n.radius_rel_perturbation;
    spec.data_noise_level = n.data_noise_level;
    spec.seed = n.seed;
    spec.scope = n.per_step_perturbation ? cdiff::PerturbationScope::per_step
                                         : cdiff::PerturbationScope::per_particle_per_step;
    if (spec.radius_rel_perturbation < 0.0)
        throw std::invalid_argument("noise: radius_rel_perturbation >= 0");
    return spec;
}

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

cdiff_grid* wrap(cdiff::Grid2D&& g) { return new cdiff_grid{std::move(g)}; }

} // namespace

extern "C" {

const char* cdiff_version(void) { return "1.0.0"; }

const char* cdiff_status_name(cdiff_status status) {
    switch (status) {
        case CDIFF_OK: return "ok";
        case CDIFF_ERR_INVALID_ARGUMENT: return "invalid argument";
        case CDIFF_ERR_DOMAIN: return "domain error";
        case CDIFF_ERR_CONVERGENCE: return "convergence failure";
        case CDIFF_ERR_STAGNATION: return "stagnation";
        case CDIFF_ERR_IO: return "i/o error";
        case CDIFF_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* cdiff_last_error(void) { return t_last_error.c_str(); }

/* ---- upsilon ---- */

cdiff_status cdiff_upsilon_create(int dim, double truncation_tol, int max_terms,
                                  cdiff_upsilon** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = new cdiff_upsilon{cdiff::UpsilonEvaluator(dim, truncation_tol, max_terms)};
    });
}

void cdiff_upsilon_destroy(cdiff_upsilon* ev) { delete ev; }

cdiff_status cdiff_upsilon_eval(const cdiff_upsilon* ev, double t, double* out) {
    return guarded([&] {
        require(ev && out, "null argument");
        *out = ev->ev.eval(t);
    });
}

cdiff_status cdiff_upsilon_eval_derivative(const cdiff_upsilon* ev, double t, double* out) {
    return guarded([&] {
        require(ev && out, "null argument");
        *out = ev->ev.eval_derivative(t);
    });
}

cdiff_status cdiff_upsilon_zeros_in(const cdiff_upsilon* ev, double a, double b,
                                    int derivative, double* roots, size_t capacity,
                                    size_t* count) {
    return guarded([&] {
        require(ev && count, "null argument");
        const auto which = derivative ? cdiff::UpsilonEvaluator::Which::derivative
                                      : cdiff::UpsilonEvaluator::Which::function;
        const std::vector<double> rs = ev->ev.zeros_in(a, b, which);
        *count = rs.size();
        if (roots) {
            const size_t n = rs.size() < capacity ? rs.size() : capacity;
            std::memcpy(roots, rs.data(), n * sizeof(double));
        }
    });
}

cdiff_status cdiff_upsilon_envelope_bound(const cdiff_upsilon* ev, double t, double* out) {
    return guarded([&] {
        require(ev && out, "null argument");
        *out = ev->ev.envelope_bound(t);
    });
}

/* ---- green ---- */

cdiff_status cdiff_ghat_causal(cdiff_params p, double k, double t, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = cdiff::ghat_causal(convert(p), k, t);
    });
}

cdiff_status cdiff_ghat_standard(cdiff_params p, double k, double t, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = cdiff::ghat_standard(convert(p), k, t);
    });
}

cdiff_status cdiff_ghat_perturbed(cdiff_params p, double k, double t, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = cdiff::ghat_perturbed(convert(p), k, t);
    });
}

cdiff_status cdiff_zero_set(cdiff_params p, double t, double k_max, double* zeros,
                            size_t capacity, size_t* count) {
    return guarded([&] {
        require(count != nullptr, "count must not be null");
        const std::vector<double> zs = cdiff::zero_set(convert(p), t, k_max);
        *count = zs.size();
        if (zeros) {
            const size_t n = zs.size() < capacity ? zs.size() : capacity;
            std::memcpy(zeros, zs.data(), n * sizeof(double));
        }
    });
}

cdiff_status cdiff_diffusivity(cdiff_params p, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = convert(p).diffusivity();
    });
}

/* ---- grid ---- */

cdiff_status cdiff_grid_create(int rows, int cols, double dx, double origin_x,
                               double origin_y, cdiff_grid** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = wrap(cdiff::Grid2D(rows, cols, dx, origin_x, origin_y));
    });
}

cdiff_status cdiff_grid_clone(const cdiff_grid* g, cdiff_grid** out) {
    return guarded([&] {
        require(g && out, "null argument");
        *out = new cdiff_grid{g->g};
    });
}

void cdiff_grid_destroy(cdiff_grid* g) { delete g; }

int cdiff_grid_rows(const cdiff_grid* g) { return g ? g->g.rows() : 0; }
int cdiff_grid_cols(const cdiff_grid* g) { return g ? g->g.cols() : 0; }
double cdiff_grid_dx(const cdiff_grid* g) { return g ? g->g.dx() : 0.0; }
double cdiff_grid_origin_x(const cdiff_grid* g) { return g ? g->g.origin_x() : 0.0; }
double cdiff_grid_origin_y(const cdiff_grid* g) { return g ? g->g.origin_y() : 0.0; }

double* cdiff_grid_data(cdiff_grid* g) { return g ? g->g.values().data() : nullptr; }
const double* cdiff_grid_data_const(const cdiff_grid* g) {
    return g ? g->g.values().data() : nullptr;
}

double cdiff_grid_total_mass(const cdiff_grid* g) { return g ? g->g.total_mass() : 0.0; }

cdiff_status cdiff_grid_load(const char* path, cdiff_grid** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = wrap(cdiff::load_grid(path));
    });
}

cdiff_status cdiff_grid_save(const cdiff_grid* g, const char* path, int dimension_tag) {
    return guarded([&] {
        require(g && path, "null argument");
        cdiff::save_grid(g->g, path, dimension_tag);
    });
}

cdiff_status cdiff_grid_save_pgm(const cdiff_grid* g, const char* path) {
    return guarded([&] {
        require(g && path, "null argument");
        cdiff::save_pgm(g->g, path);
    });
}

cdiff_status cdiff_grid_make_synthetic(const char* name, int rows, int cols, double dx,
                                       cdiff_grid** out) {
    return guarded([&] {
        require(name && out, "null argument");
        *out = wrap(cdiff::make_synthetic(name, rows, cols, dx));
    });
}

cdiff_status cdiff_grid_rel_l2_distance(const cdiff_grid* a, const cdiff_grid* b,
                                        double* out) {
    return guarded([&] {
        require(a && b && out, "null argument");
        const double denom = cdiff::l2_norm(b->g);
        require(denom > 0.0, "reference grid has zero norm");
        *out = cdiff::l2_distance(a->g, b->g) / denom;
    });
}

/* ---- forward ---- */

cdiff_status cdiff_evolve_spatial(const cdiff_grid* u, cdiff_params p, double T,
                                  int stencil_points, cdiff_grid** out,
                                  int* support_clipped) {
    return guarded([&] {
        require(u && out, "null argument");
        cdiff::StepResult r = cdiff::evolve(u->g, convert(p), T, stencil_points);
        if (support_clipped) *support_clipped = r.support_clipped ? 1 : 0;
        *out = wrap(std::move(r.grid));
    });
}

cdiff_status cdiff_evolve_spectral(const cdiff_grid* u, cdiff_params p, double T,
                                   cdiff_grid** out) {
    return guarded([&] {
        require(u && out, "null argument");
        *out = wrap(cdiff::evolve_spectral(u->g, convert(p), T));
    });
}

cdiff_status cdiff_evolve_spectral_dt(const cdiff_grid* u, cdiff_params p, double T,
                                      cdiff_grid** out) {
    return guarded([&] {
        require(u && out, "null argument");
        *out = wrap(cdiff::evolve_spectral_dt(u->g, convert(p), T));
    });
}

cdiff_status cdiff_evolve_euler(const cdiff_grid* u, cdiff_params p, double T, double dt,
                                cdiff_grid** out) {
    return guarded([&] {
        require(u && out, "null argument");
        const cdiff::DiffusionParams params = convert(p);
        if (dt <= 0.0) {
            const double dx = u->g.dx();
            dt = dx * dx / (2.0 * params.dim * params.diffusivity());
        }
        *out = wrap(cdiff::evolve_euler_standard(u->g, params, T, dt));
    });
}

/* ---- particle ---- */

cdiff_status cdiff_simulate_data(const cdiff_grid* u, cdiff_params p, double T, int M,
                                 cdiff_noise_spec noise, uint64_t seed, cdiff_grid** out) {
    return guarded([&] {
        require(u && out, "null argument");
        *out = wrap(cdiff::simulate_data(u->g, convert(p), T, M, convert(noise), seed));
    });
}

cdiff_status cdiff_add_data_noise(const cdiff_grid* w, cdiff_noise_spec noise,
                                  cdiff_grid** out) {
    return guarded([&] {
        require(w && out, "null argument");
        *out = wrap(cdiff::add_data_noise(w->g, convert(noise)));
    });
}

/* ---- inversion ---- */

cdiff_status cdiff_solve_landweber(const cdiff_grid* w, cdiff_params p, double T,
                                   cdiff_landweber_config cfg, const cdiff_grid* u0,
                                   const char* csv_log_path, cdiff_grid** out,
                                   cdiff_landweber_stats* stats) {
    return guarded([&] {
        require(w && out, "null argument");
        cdiff::LandweberConfig config;
        config.eta = cfg.eta;
        config.delta = cfg.delta;
        config.max_iters = cfg.max_iters;
        config.forward_path =
            cfg.spectral_path ? cdiff::ForwardPath::spectral : cdiff::ForwardPath::spatial;
        config.stencil_points = cfg.stencil_points;

        cdiff::Grid2D start = u0 ? u0->g : cdiff::Grid2D::zeros_like(w->g);

        std::ofstream log;
        std::ostream* log_ptr = nullptr;
        if (csv_log_path) {
            log.open(csv_log_path);
            require(static_cast<bool>(log), "cannot open iteration log for writing");
            log << "iteration,residual_norm,omega,min_value,mass\n";
            log_ptr = &log;
        }

        cdiff::LandweberState state =
            cdiff::solve_landweber(w->g, convert(p), T, config, start, log_ptr);
        if (stats) {
            stats->iterations = static_cast<int>(state.residual_norms.size()) - 1;
            stats->stopped_by_discrepancy =
                state.stop_reason == cdiff::StopReason::discrepancy ? 1 : 0;
            stats->final_residual = state.residual_norms.back();
        }
        *out = wrap(std::move(state.iterate));
    });
}

cdiff_status cdiff_moore_penrose(const cdiff_grid* w, cdiff_params p, double T,
                                 double zero_mask_tol, cdiff_grid** out,
                                 double* masked_fraction) {
    return guarded([&] {
        require(w && out, "null argument");
        cdiff::MoorePenroseResult r =
            cdiff::moore_penrose_spectral(w->g, convert(p), T, zero_mask_tol);
        if (masked_fraction) *masked_fraction = r.masked_fraction;
        *out = wrap(std::move(r.estimate));
    });
}

cdiff_status cdiff_time_reversal(const cdiff_grid* w, const cdiff_grid* w2, cdiff_params p,
                                 double T, double band_split_tol, cdiff_grid** out) {
    return guarded([&] {
        require(w && w2 && out, "null argument");
        *out = wrap(cdiff::time_reversal(w->g, w2->g, convert(p), T, band_split_tol));
    });
}

} // extern "C"
