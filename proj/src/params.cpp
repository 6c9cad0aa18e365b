#include "cdiff/params.hpp"

#include <cmath>
#include <stdexcept>

namespace cdiff {

DiffusionParams::DiffusionParams(double speed, double step_time, int dimension)
    : c(speed), tau(step_time), dim(dimension) {
    if (!(std::isfinite(speed) && speed > 0.0))
        throw std::invalid_argument("DiffusionParams: speed must be finite and > 0");
    if (!(std::isfinite(step_time) && step_time > 0.0))
        throw std::invalid_argument("DiffusionParams: tau must be finite and > 0");
    if (dimension < 1)
        throw std::invalid_argument("DiffusionParams: dimension must be >= 1");
}

double DiffusionParams::perturbed_diffusivity() const {
    return diffusivity() / std::log(2.0);
}

TimeSplit split_time(const DiffusionParams& p, double t) {
    if (!(std::isfinite(t) && t > 0.0))
        throw std::domain_error("split_time: requires t > 0");
    const double q = t / p.tau;
    if (q > 9e15) throw std::domain_error("split_time: t/tau too large");
    // t in (m tau, (m+1) tau]  <=>  m = ceil(t/tau) - 1
    long m = static_cast<long>(std::ceil(q)) - 1;
    if (m < 0) m = 0;
    double s = t - static_cast<double>(m) * p.tau;
    if (s <= 0.0) {
        // rounding pushed t onto/under the step boundary: previous interval
        m = m > 0 ? m - 1 : 0;
        s = t - static_cast<double>(m) * p.tau;
    } else if (s > p.tau) {
        if (s - p.tau <= 1e-9 * p.tau) {
            s = p.tau; // seam roundoff, t is an integer multiple of tau
        } else {
            m += 1;
            s = t - static_cast<double>(m) * p.tau;
        }
    }
    return {m, s};
}

} // namespace cdiff
