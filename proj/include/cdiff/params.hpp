#ifndef CDIFF_PARAMS_HPP
#define CDIFF_PARAMS_HPP

namespace cdiff {

// Characteristic parameters of the finite-speed diffusion model: propagation
// speed c, step time tau and space dimension N. The matched diffusivity of
// the classical model, D0 = c^2 tau / (2N), is always derived, never stored.
struct DiffusionParams {
    double c;
    double tau;
    int dim;

    DiffusionParams(double speed, double step_time, int dimension);

    double diffusivity() const { return c * c * tau / (2.0 * dim); }
    // Diffusivity of the base-2 reference kernel, D# = D0 / ln 2.
    double perturbed_diffusivity() const;
};

// t = steps * tau + residual with residual in (0, tau]; exact multiples of
// tau map to (steps = t/tau - 1, residual = tau).
struct TimeSplit {
    long steps;      // m >= 0
    double residual; // s in (0, tau]
};

TimeSplit split_time(const DiffusionParams& p, double t);

} // namespace cdiff

#endif
