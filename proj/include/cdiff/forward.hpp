#ifndef CDIFF_FORWARD_HPP
#define CDIFF_FORWARD_HPP

#include <array>
#include <vector>

#include "cdiff/grid.hpp"
#include "cdiff/params.hpp"
#include "cdiff/spectrum.hpp"

namespace cdiff {

// Equally spaced, equally weighted quadrature nodes on a circle (trapezoidal
// rule on the circle: spectrally accurate for smooth integrands). Offsets are
// physical; components that vanish analytically are snapped to exact zeros so
// lattice-aligned stencils sample pixels exactly.
struct CircleStencil {
    double radius = 0.0;
    int n_points = 0;
    std::vector<std::array<double, 2>> offsets;

    static CircleStencil make(double radius, int n_points);
};

struct StepResult {
    Grid2D grid;
    // Set when nonzero input lies within one stencil radius of the boundary,
    // i.e. the grid is too small to contain the expanded support.
    bool support_clipped = false;
};

// One averaging step over the sphere of radius c*s (2D): each output pixel is
// the equal-weight mean of bilinear samples of u at the stencil offsets.
// Samples outside the grid read zero (free-space boundary). Requires
// p.dim == 2 and stencil.radius == c*s.
StepResult step_spatial(const Grid2D& u, const DiffusionParams& p, double s,
                        const CircleStencil& stencil);

// The full forward map on grids by spatial stepping: m steps of length tau
// plus one residual step, (m, s) = split_time(T). Steps commute.
StepResult evolve(const Grid2D& u, const DiffusionParams& p, double T, int stencil_points);

// Identical to evolve: the kernel is even, so the operator is self-adjoint.
// Kept under its own name so solvers are written against the adjoint contract.
StepResult adjoint_apply(const Grid2D& w, const DiffusionParams& p, double T,
                         int stencil_points);

// Per-mode multiplier operator on a fixed grid shape: transform, multiply by
// U_N(|k| c tau)^m U_N(|k| c s) (or its time-derivative counterpart),
// inverse transform. Construction evaluates the multiplier once per bin;
// apply() is then two FFTs. Semigroup and mass conservation are exact up to
// floating point.
class SpectralOperator {
  public:
    enum class Mode { value, time_derivative };

    SpectralOperator(int rows, int cols, double dx, const DiffusionParams& p, double T,
                     Mode mode = Mode::value);

    Grid2D apply(const Grid2D& u) const;
    const std::vector<double>& multiplier() const noexcept { return multiplier_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    double dx() const noexcept { return dx_; }

  private:
    int rows_, cols_;
    double dx_;
    std::vector<double> multiplier_;
};

// One-shot spectral evolution (builds the operator and applies it).
Grid2D evolve_spectral(const Grid2D& u, const DiffusionParams& p, double T);

// Time derivative of the evolved state at time T, realized spectrally via
// the multiplier U^m(|k| c tau) c|k| U'_N(|k| c s).
Grid2D evolve_spectral_dt(const Grid2D& u, const DiffusionParams& p, double T);

// Explicit 5-point forward-Euler stepping of the classical diffusion
// equation with diffusivity D0 = c^2 tau/(2N) up to time T; the last partial
// step is scaled. Requires p.dim == 2 and the stability bound
// dt <= dx^2/(2 N D0).
Grid2D evolve_euler_standard(const Grid2D& u, const DiffusionParams& p, double T,
                             double dt);

// 1D step: out(x) = [u(x - cs) + u(x + cs)]/2 with linear interpolation;
// exact two-point translation when c*s is an integer multiple of dx.
// Requires p.dim == 1 and s in (0, tau].
Grid1D step_1d(const Grid1D& u, const DiffusionParams& p, double s);

} // namespace cdiff

#endif
