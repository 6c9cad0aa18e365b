#include "cdiff/forward.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cdiff/green.hpp"
#include "cdiff/upsilon.hpp"

namespace cdiff {

CircleStencil CircleStencil::make(double radius, int n_points) {
    if (!(radius > 0.0)) throw std::invalid_argument("CircleStencil: radius > 0");
    if (n_points < 4) throw std::invalid_argument("CircleStencil: n_points >= 4");
    CircleStencil st;
    st.radius = radius;
    st.n_points = n_points;
    st.offsets.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / n_points;
        double ox = radius * std::cos(phi);
        double oy = radius * std::sin(phi);
        // snap components that are zero analytically (axis-aligned nodes)
        if (std::abs(ox) < radius * 1e-15) ox = 0.0;
        if (std::abs(oy) < radius * 1e-15) oy = 0.0;
        st.offsets.push_back({ox, oy});
    }
    return st;
}

namespace {

// Bilinear read in index space with zero extension outside the grid.
inline double sample_bilinear(const Grid2D& u, double fr, double fc) {
    const double fr_floor = std::floor(fr);
    const double fc_floor = std::floor(fc);
    const int r0 = static_cast<int>(fr_floor);
    const int c0 = static_cast<int>(fc_floor);
    const double wr = fr - fr_floor;
    const double wc = fc - fc_floor;

    auto at = [&u](int r, int c) -> double {
        if (r < 0 || c < 0 || r >= u.rows() || c >= u.cols()) return 0.0;
        return u(r, c);
    };
    const double v00 = at(r0, c0), v01 = at(r0, c0 + 1);
    const double v10 = at(r0 + 1, c0), v11 = at(r0 + 1, c0 + 1);
    return (1.0 - wr) * ((1.0 - wc) * v00 + wc * v01) +
           wr * ((1.0 - wc) * v10 + wc * v11);
}

bool support_near_boundary(const Grid2D& u, double radius) {
    const int margin = static_cast<int>(std::ceil(radius / u.dx())) + 1;
    for (int r = 0; r < u.rows(); ++r) {
        const bool row_edge = r < margin || r >= u.rows() - margin;
        for (int c = 0; c < u.cols(); ++c) {
            if (!row_edge && c >= margin && c < u.cols() - margin) {
                c = u.cols() - margin - 1; // skip the interior span
                continue;
            }
            if (u(r, c) != 0.0) return true;
        }
    }
    return false;
}

} // namespace

StepResult step_spatial(const Grid2D& u, const DiffusionParams& p, double s,
                        const CircleStencil& stencil) {
    if (p.dim != 2)
        throw std::invalid_argument("step_spatial: grid stepping requires dim == 2");
    if (!(s > 0.0) || s > p.tau * (1.0 + 1e-12))
        throw std::invalid_argument("step_spatial: requires s in (0, tau]");
    const double want = p.c * s;
    if (std::abs(stencil.radius - want) > 1e-9 * std::max(1.0, want))
        throw std::invalid_argument("step_spatial: stencil radius != c*s");

    StepResult result{Grid2D::zeros_like(u), support_near_boundary(u, stencil.radius)};
    Grid2D& out = result.grid;

    const int n = stencil.n_points;
    const double weight = 1.0 / n;
    std::vector<double> off_r(static_cast<std::size_t>(n)), off_c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        off_c[static_cast<std::size_t>(i)] = stencil.offsets[static_cast<std::size_t>(i)][0] / u.dx();
        off_r[static_cast<std::size_t>(i)] = stencil.offsets[static_cast<std::size_t>(i)][1] / u.dx();
    }

    for (int r = 0; r < u.rows(); ++r) {
        for (int c = 0; c < u.cols(); ++c) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                acc += sample_bilinear(u, r + off_r[static_cast<std::size_t>(i)],
                                       c + off_c[static_cast<std::size_t>(i)]);
            }
            out(r, c) = acc * weight;
        }
    }
    return result;
}

StepResult evolve(const Grid2D& u, const DiffusionParams& p, double T, int stencil_points) {
    const TimeSplit ts = split_time(p, T);
    StepResult result{u, false};
    const CircleStencil full = CircleStencil::make(p.c * p.tau, stencil_points);
    for (long m = 0; m < ts.steps; ++m) {
        StepResult step = step_spatial(result.grid, p, p.tau, full);
        result.grid = std::move(step.grid);
        result.support_clipped = result.support_clipped || step.support_clipped;
    }
    const CircleStencil rest = CircleStencil::make(p.c * ts.residual, stencil_points);
    StepResult step = step_spatial(result.grid, p, ts.residual, rest);
    result.grid = std::move(step.grid);
    result.support_clipped = result.support_clipped || step.support_clipped;
    return result;
}

StepResult adjoint_apply(const Grid2D& w, const DiffusionParams& p, double T,
                         int stencil_points) {
    return evolve(w, p, T, stencil_points);
}

SpectralOperator::SpectralOperator(int rows, int cols, double dx, const DiffusionParams& p,
                                   double T, Mode mode)
    : rows_(rows), cols_(cols), dx_(dx),
      multiplier_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("SpectralOperator: shape");
    const TimeSplit ts = split_time(p, T);
    const UpsilonEvaluator ev(p.dim);
    const Spectrum lattice(rows, cols, dx); // wave-number bookkeeping only
    std::size_t i = 0;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c, ++i) {
            const double k = lattice.k_mag(r, c);
            const double step_factor = ipow(ev.eval(k * p.c * p.tau), ts.steps);
            if (mode == Mode::value) {
                multiplier_[i] = step_factor * ev.eval(k * p.c * ts.residual);
            } else {
                multiplier_[i] =
                    step_factor * p.c * k * ev.eval_derivative(k * p.c * ts.residual);
            }
        }
    }
}

Grid2D SpectralOperator::apply(const Grid2D& u) const {
    if (u.rows() != rows_ || u.cols() != cols_ || u.dx() != dx_)
        throw std::invalid_argument("SpectralOperator: grid shape mismatch");
    Spectrum s = fft_forward(u);
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) s.coeffs()[i] *= multiplier_[i];
    return fft_inverse(s);
}

Grid2D evolve_spectral(const Grid2D& u, const DiffusionParams& p, double T) {
    return SpectralOperator(u.rows(), u.cols(), u.dx(), p, T).apply(u);
}

Grid2D evolve_spectral_dt(const Grid2D& u, const DiffusionParams& p, double T) {
    return SpectralOperator(u.rows(), u.cols(), u.dx(), p, T,
                            SpectralOperator::Mode::time_derivative)
        .apply(u);
}

Grid2D evolve_euler_standard(const Grid2D& u, const DiffusionParams& p, double T,
                             double dt) {
    if (p.dim != 2)
        throw std::invalid_argument("evolve_euler_standard: requires dim == 2");
    if (!(T > 0.0)) throw std::invalid_argument("evolve_euler_standard: requires T > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("evolve_euler_standard: requires dt > 0");
    const double d0 = p.diffusivity();
    const double dx2 = u.dx() * u.dx();
    if (dt > dx2 / (2.0 * p.dim * d0) * (1.0 + 1e-12))
        throw std::invalid_argument(
            "evolve_euler_standard: unstable dt (requires dt <= dx^2/(2 N D0))");

    const long full_steps = static_cast<long>(std::floor(T / dt * (1.0 + 1e-15)));
    const double rest = T - static_cast<double>(full_steps) * dt;

    Grid2D cur = u;
    Grid2D next = Grid2D::zeros_like(u);
    auto sweep = [&cur, &next](double lambda) {
        const double center = 1.0 - 4.0 * lambda;
        auto at = [&](int r, int c) -> double {
            if (r < 0 || c < 0 || r >= cur.rows() || c >= cur.cols()) return 0.0;
            return cur(r, c);
        };
        for (int r = 0; r < cur.rows(); ++r) {
            for (int c = 0; c < cur.cols(); ++c) {
                // neighbor order matches the 4-point circle stencil (E, N, W, S)
                const double ring = at(r, c + 1) + at(r + 1, c) + at(r, c - 1) + at(r - 1, c);
                next(r, c) = center * cur(r, c) + lambda * ring;
            }
        }
        std::swap(cur.values(), next.values());
    };

    const double lambda_full = d0 * dt / dx2;
    for (long i = 0; i < full_steps; ++i) sweep(lambda_full);
    if (rest > 1e-14 * T) sweep(d0 * rest / dx2);
    return cur;
}

Grid1D step_1d(const Grid1D& u, const DiffusionParams& p, double s) {
    if (p.dim != 1) throw std::invalid_argument("step_1d: requires dim == 1");
    if (!(s > 0.0) || s > p.tau * (1.0 + 1e-12))
        throw std::invalid_argument("step_1d: requires s in (0, tau]");
    const double shift = p.c * s / u.dx(); // in index units
    Grid1D out(u.size(), u.dx(), u.origin());

    auto sample = [&u](double fi) -> double {
        const double fl = std::floor(fi);
        const int i0 = static_cast<int>(fl);
        const double w = fi - fl;
        auto at = [&u](int i) -> double {
            if (i < 0 || i >= u.size()) return 0.0;
            return u[i];
        };
        return (1.0 - w) * at(i0) + w * at(i0 + 1);
    };

    for (int i = 0; i < u.size(); ++i)
        out[i] = 0.5 * (sample(i - shift) + sample(i + shift));
    return out;
}

} // namespace cdiff
