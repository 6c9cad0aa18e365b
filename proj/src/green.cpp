#include "cdiff/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cdiff/upsilon.hpp"

namespace cdiff {

namespace {

double two_pi_pow(int dim) {
    return std::pow(2.0 * std::numbers::pi, -0.5 * dim);
}

void require_wavenumber(double k) {
    if (!(std::isfinite(k) && k >= 0.0))
        throw std::domain_error("green: wave number must be finite and >= 0");
}

} // namespace

double ipow(double y, long m) {
    if (m < 0) throw std::invalid_argument("ipow: negative exponent");
    double r = 1.0;
    double b = y;
    while (m > 0) {
        if (m & 1) r *= b;
        m >>= 1;
        if (m > 0) b *= b;
    }
    return r;
}

double spectral_multiplier(const DiffusionParams& p, double k, double t) {
    require_wavenumber(k);
    const TimeSplit ts = split_time(p, t);
    const UpsilonEvaluator ev(p.dim);
    const double step_factor = ev.eval(k * p.c * p.tau);
    const double residual_factor = ev.eval(k * p.c * ts.residual);
    return ipow(step_factor, ts.steps) * residual_factor;
}

double spectral_multiplier_dt(const DiffusionParams& p, double k, double t) {
    require_wavenumber(k);
    const TimeSplit ts = split_time(p, t);
    const UpsilonEvaluator ev(p.dim);
    const double step_factor = ev.eval(k * p.c * p.tau);
    const double residual_rate = p.c * k * ev.eval_derivative(k * p.c * ts.residual);
    return ipow(step_factor, ts.steps) * residual_rate;
}

double ghat_causal(const DiffusionParams& p, double k, double t) {
    return two_pi_pow(p.dim) * spectral_multiplier(p, k, t);
}

double ghat_standard(const DiffusionParams& p, double k, double t) {
    require_wavenumber(k);
    if (!(t > 0.0)) throw std::domain_error("ghat_standard: requires t > 0");
    return two_pi_pow(p.dim) * std::exp(-p.diffusivity() * k * k * t);
}

double ghat_perturbed(const DiffusionParams& p, double k, double t) {
    require_wavenumber(k);
    if (!(t > 0.0)) throw std::domain_error("ghat_perturbed: requires t > 0");
    return two_pi_pow(p.dim) * std::exp(-p.perturbed_diffusivity() * k * k * t);
}

std::vector<double> zero_set(const DiffusionParams& p, double t, double k_max) {
    if (!(t > 0.0) || !(k_max > 0.0))
        throw std::domain_error("zero_set: requires t > 0 and k_max > 0");
    const TimeSplit ts = split_time(p, t);
    const UpsilonEvaluator ev(p.dim);

    std::vector<double> zs;
    auto add_scaled = [&](double scale) {
        // zeros of U_N(scale * k) for k in (0, k_max]
        const std::vector<double> roots = ev.zeros_in(0.0, scale * k_max * (1.0 + 1e-15));
        for (double r : roots) {
            const double k = r / scale;
            if (k > 0.0 && k <= k_max) zs.push_back(k);
        }
    };
    add_scaled(p.c * p.tau);
    add_scaled(p.c * ts.residual);

    std::sort(zs.begin(), zs.end());
    std::vector<double> out;
    for (double k : zs) {
        if (out.empty() || k - out.back() > 1e-9) out.push_back(k);
    }
    return out;
}

EnvelopeDecay envelope_decay_rate(const DiffusionParams& p, double T) {
    const TimeSplit ts = split_time(p, T);
    const double half = (p.dim - 1.0) / 2.0;
    EnvelopeDecay d;
    d.exponent = (ts.steps + 1.0) * half;
    d.coefficient = std::pow(p.c * p.tau, ts.steps * half) * std::pow(p.c * ts.residual, half);
    return d;
}

} // namespace cdiff
