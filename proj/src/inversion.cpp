#include "cdiff/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "cdiff/errors.hpp"
#include "cdiff/spectrum.hpp"
#include "cdiff/upsilon.hpp"

namespace cdiff {

namespace {

void log_row(std::ostream* os, int iteration, double residual, const double* omega,
             const Grid2D& iterate) {
    if (!os) return;
    char buf[192];
    if (omega) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", iteration, residual,
                      *omega, iterate.min_value(), iterate.total_mass());
    } else {
        std::snprintf(buf, sizeof buf, "%d,%.17g,,%.17g,%.17g\n", iteration, residual,
                      iterate.min_value(), iterate.total_mass());
    }
    (*os) << buf;
}

struct StepOutcome {
    Grid2D iterate;
    double residual_norm; // ||F(u_n) - w|| at the incoming iterate
    double omega;
};

// Core update shared by landweber_step and solve_landweber. `fu` must be
// F(iterate); returns the projected next iterate.
StepOutcome update(const ForwardModel& model, const Grid2D& iterate, const Grid2D& fu,
                   const Grid2D& w_delta) {
    Grid2D r = fu;
    for (std::size_t i = 0; i < r.size(); ++i) r.values()[i] -= w_delta.values()[i];
    const double r_norm = l2_norm(r);

    const Grid2D fr = model.adjoint(r);
    const double fr_norm = l2_norm(fr);
    if (r_norm > 0.0 && fr_norm <= 1e-14 * r_norm)
        throw StagnationError(
            "landweber: residual lies in the numerical null space of the forward map");

    const double omega =
        fr_norm > 0.0 ? 0.25 * (r_norm * r_norm) / (fr_norm * fr_norm) : 0.0;

    Grid2D next = iterate;
    for (std::size_t i = 0; i < next.size(); ++i) {
        const double v = next.values()[i] - omega * fr.values()[i];
        next.values()[i] = v > 0.0 ? v : 0.0; // projection onto {u >= 0}
    }
    return {std::move(next), r_norm, omega};
}

} // namespace

ForwardModel::ForwardModel(int rows, int cols, double dx, const DiffusionParams& p,
                           double T, ForwardPath path, int stencil_points)
    : params_(p), time_(T), path_(path), stencil_points_(stencil_points) {
    if (path == ForwardPath::spectral)
        spectral_ = std::make_shared<const SpectralOperator>(rows, cols, dx, p, T);
}

Grid2D ForwardModel::apply(const Grid2D& u) const {
    if (path_ == ForwardPath::spectral) return spectral_->apply(u);
    return evolve(u, params_, time_, stencil_points_).grid;
}

LandweberState landweber_step(LandweberState state, const Grid2D& w_delta,
                              const DiffusionParams& p, double T,
                              const LandweberConfig& cfg) {
    if (!state.iterate.same_shape(w_delta))
        throw std::invalid_argument("landweber_step: iterate/data shape mismatch");
    const ForwardModel model(w_delta.rows(), w_delta.cols(), w_delta.dx(), p, T,
                             cfg.forward_path, cfg.stencil_points);
    StepOutcome out = update(model, state.iterate, model.apply(state.iterate), w_delta);
    state.iterate = std::move(out.iterate);
    state.residual_norms.push_back(out.residual_norm);
    state.omegas.push_back(out.omega);
    return state;
}

LandweberState solve_landweber(const Grid2D& w_delta, const DiffusionParams& p, double T,
                               const LandweberConfig& cfg, const Grid2D& u0,
                               std::ostream* iteration_log) {
    if (!u0.same_shape(w_delta))
        throw std::invalid_argument("solve_landweber: u0/data shape mismatch");
    if (cfg.eta < 2.0)
        throw std::invalid_argument("solve_landweber: discrepancy factor eta >= 2");
    if (cfg.delta < 0.0) throw std::invalid_argument("solve_landweber: delta >= 0");
    if (cfg.max_iters < 1) throw std::invalid_argument("solve_landweber: max_iters >= 1");

    const ForwardModel model(w_delta.rows(), w_delta.cols(), w_delta.dx(), p, T,
                             cfg.forward_path, cfg.stencil_points);
    const double threshold = cfg.eta * cfg.delta * l2_norm(w_delta);

    LandweberState state{u0, {}, {}, std::nullopt, StopReason::max_iters};
    Grid2D fu = model.apply(state.iterate);

    for (int n = 0;; ++n) {
        // residual at the current iterate
        {
            Grid2D r = fu;
            for (std::size_t i = 0; i < r.size(); ++i) r.values()[i] -= w_delta.values()[i];
            const double r_norm = l2_norm(r);
            state.residual_norms.push_back(r_norm);
            log_row(iteration_log, n, r_norm,
                    state.omegas.empty() ? nullptr : &state.omegas.back(), state.iterate);
            if (r_norm < threshold) {
                state.stopped_at = n;
                state.stop_reason = StopReason::discrepancy;
                return state;
            }
        }
        if (n == cfg.max_iters) {
            state.stop_reason = StopReason::max_iters;
            return state;
        }
        StepOutcome out = update(model, state.iterate, fu, w_delta);
        state.iterate = std::move(out.iterate);
        state.omegas.push_back(out.omega);
        fu = model.apply(state.iterate);
    }
}

MoorePenroseResult moore_penrose_spectral(const Grid2D& w, const DiffusionParams& p,
                                          double T, double zero_mask_tol) {
    const SpectralOperator op(w.rows(), w.cols(), w.dx(), p, T);
    const std::vector<double>& mult = op.multiplier();

    double tol = zero_mask_tol;
    if (!(tol > 0.0)) {
        double max_abs = 0.0;
        for (double m : mult) max_abs = std::max(max_abs, std::abs(m));
        tol = 1e-3 * max_abs;
    }

    Spectrum s = fft_forward(w);
    std::size_t masked = 0;
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
        if (std::abs(mult[i]) > tol) {
            s.coeffs()[i] /= mult[i];
        } else {
            s.coeffs()[i] = 0.0;
            ++masked;
        }
    }
    MoorePenroseResult result{fft_inverse(s),
                              static_cast<double>(masked) /
                                  static_cast<double>(s.coeffs().size()),
                              false};
    result.heavily_masked = result.masked_fraction > 0.5;
    return result;
}

Grid2D time_reversal(const Grid2D& w, const Grid2D& w2, const DiffusionParams& p,
                     double T, double band_split_tol) {
    if (!w.same_shape(w2))
        throw std::invalid_argument("time_reversal: data grids must share a shape");
    if (!(T > 0.0) || T > p.tau * (1.0 + 1e-12))
        throw std::invalid_argument("time_reversal: requires T in (0, tau]");
    if (!(band_split_tol > 0.0))
        throw std::invalid_argument("time_reversal: band_split_tol > 0");

    const UpsilonEvaluator ev(p.dim);
    Spectrum sw = fft_forward(w);
    const Spectrum sw2 = fft_forward(w2);

    for (int r = 0; r < sw.rows(); ++r) {
        for (int c = 0; c < sw.cols(); ++c) {
            const double k = sw.k_mag(r, c);
            const double a = ev.eval(k * p.c * T);
            if (std::abs(a) >= band_split_tol) {
                sw(r, c) /= a;
            } else {
                const double da = ev.eval_derivative(k * p.c * T);
                if (std::abs(da) < band_split_tol)
                    throw std::logic_error(
                        "time_reversal: both U and U' below band_split_tol; the zeros are "
                        "simple and disjoint, so the tolerance is too large");
                sw(r, c) = sw2(r, c) / (k * p.c * da);
            }
        }
    }
    return fft_inverse(sw);
}

} // namespace cdiff
