#include "cdiff/upsilon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cdiff/bessel.hpp"
#include "cdiff/errors.hpp"

namespace cdiff {

namespace {

// Minimal double-double arithmetic for the compensated series. The alternating
// series loses ~t^2/2 bits to cancellation in plain doubles; carrying ~31.8
// significant digits keeps the sum accurate to better than 1e-12 absolute for
// t up to ~55, which covers every series-path evaluation in this module.
struct dd {
    double hi = 0.0, lo = 0.0;
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) { // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd mul(dd a, double b) {
    dd p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline dd div(dd a, double b) {
    const double q1 = a.hi / b;
    dd p = two_prod(q1, b);
    const double q2 = ((a.hi - p.hi) - p.lo + a.lo) / b;
    return quick_two_sum(q1, q2);
}

void require_evaluable(double t) {
    if (!std::isfinite(t)) throw std::domain_error("upsilon: t must be finite");
    if (t < 0.0) throw std::domain_error("upsilon: t must be nonnegative");
}

} // namespace

SeriesCoefficients SeriesCoefficients::compute(int dimension, std::size_t count) {
    if (dimension < 1) throw std::invalid_argument("SeriesCoefficients: dimension >= 1");
    SeriesCoefficients sc;
    sc.a.reserve(count);
    double a = 1.0;
    for (std::size_t j = 0; j < count; ++j) {
        if (j > 0) {
            const double jj = static_cast<double>(j);
            a /= (2.0 * jj) * (dimension + 2.0 * jj - 2.0);
        }
        sc.a.push_back(a);
    }
    return sc;
}

UpsilonEvaluator::UpsilonEvaluator(int dimension, double truncation_tol, int max_terms)
    : dim_(dimension), tol_(truncation_tol), max_terms_(max_terms) {
    if (dimension < 1) throw std::invalid_argument("UpsilonEvaluator: dimension >= 1");
    if (!(truncation_tol > 0.0))
        throw std::invalid_argument("UpsilonEvaluator: truncation_tol > 0");
    if (max_terms < 1) throw std::invalid_argument("UpsilonEvaluator: max_terms >= 1");
}

UpsilonEvaluator::UpsilonEvaluator(const UpsilonEvaluator& other)
    : dim_(other.dim_), tol_(other.tol_), max_terms_(other.max_terms_) {}

UpsilonEvaluator& UpsilonEvaluator::operator=(const UpsilonEvaluator& other) {
    if (this != &other) {
        std::lock_guard<std::mutex> lock(envelope_mutex_);
        dim_ = other.dim_;
        tol_ = other.tol_;
        max_terms_ = other.max_terms_;
        envelope_ready_.store(false, std::memory_order_release);
    }
    return *this; // envelope cache is rebuilt on demand
}

UpsilonEvaluator::SeriesResult UpsilonEvaluator::series_sums(double t) const {
    // c_j = (-1)^j a_{2j} t^{2j}; contributions to U, U', U'' are
    // c_j, c_j 2j/t and c_j 2j(2j-1)/t^2. The next-term bounds used for
    // truncation: |c_{j+1}| 2(j+1)/t <= |c_j| max(1,t) and
    // |c_{j+1}| (2j+2)(2j+1)/t^2 <= |c_j| (2j+1)/(N+2j) <= |c_j|.
    const dd t2 = two_prod(t, t);
    dd c{1.0, 0.0};
    dd value{1.0, 0.0}, d1{0.0, 0.0}, d2{0.0, 0.0};
    const double guard = std::max(1.0, t);
    bool converged = false;
    for (int j = 1; j <= max_terms_; ++j) {
        const double denom = (2.0 * j) * (dim_ + 2.0 * j - 2.0);
        c = div(mul(c, t2), -denom);
        value = add(value, c);
        d1 = add(d1, div(mul(c, 2.0 * j), t));
        d2 = add(d2, div(mul(c, (2.0 * j) * (2.0 * j - 1.0)), t * t));
        const bool past_peak = (2.0 * j + 2.0) * (dim_ + 2.0 * j) > t * t;
        if (past_peak && std::abs(c.hi) * guard < tol_) {
            converged = true;
            break;
        }
    }
    return {value.hi, d1.hi, d2.hi, converged};
}

void UpsilonEvaluator::recurrence_pair(double t, double& value, double& deriv) const {
    int base = (dim_ % 2 == 1) ? 1 : 2;
    double v, d;
    if (base == 1) {
        v = std::cos(t);
        d = -std::sin(t);
    } else {
        v = bessel_j0(t);
        d = -bessel_j1(t);
    }
    // (U_M, U'_M) -> (U_{M+2}, U'_{M+2}):
    //   U_{M+2}  = -(M/t) U'_M
    //   U'_{M+2} = (M^2/t^2) U'_M + (M/t) U_M
    for (int m = base; m < dim_; m += 2) {
        const double mm = static_cast<double>(m);
        const double vn = -(mm / t) * d;
        const double dn = (mm * mm) / (t * t) * d + (mm / t) * v;
        v = vn;
        d = dn;
    }
    value = v;
    deriv = d;
}

double UpsilonEvaluator::eval(double t) const {
    require_evaluable(t);
    if (t == 0.0) return 1.0;
    switch (dim_) {
        case 1: return std::cos(t);
        case 2: return bessel_j0(t);
        case 3: return sinc(t);
        default: break;
    }
    if (t * t > 2.0 * dim_) return eval_by_recurrence(t);
    const SeriesResult s = series_sums(t);
    if (!s.converged)
        throw ConvergenceError("upsilon: series not converged within max_terms", s.value);
    return s.value;
}

double UpsilonEvaluator::eval_derivative(double t) const {
    require_evaluable(t);
    if (t == 0.0) return 0.0;
    switch (dim_) {
        case 1: return -std::sin(t);
        case 2: return -bessel_j1(t);
        case 3: return sinc_deriv(t);
        default: break;
    }
    if (t * t > 2.0 * dim_) {
        double v, d;
        recurrence_pair(t, v, d);
        return d;
    }
    const SeriesResult s = series_sums(t);
    if (!s.converged)
        throw ConvergenceError("upsilon: series not converged within max_terms", s.d1);
    return s.d1;
}

double UpsilonEvaluator::eval_by_series(double t) const {
    require_evaluable(t);
    if (t == 0.0) return 1.0;
    const SeriesResult s = series_sums(t);
    if (!s.converged)
        throw ConvergenceError("upsilon: series not converged within max_terms", s.value);
    return s.value;
}

double UpsilonEvaluator::eval_by_recurrence(double t) const {
    if (dim_ < 3)
        throw std::invalid_argument("eval_by_recurrence: requires dimension >= 3");
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error("eval_by_recurrence: requires t > 0 (use eval at t = 0)");
    double v, d;
    recurrence_pair(t, v, d);
    return v;
}

double UpsilonEvaluator::ode_residual(double t) const {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error("ode_residual: requires t > 0");
    double u, du, d2u;
    switch (dim_) {
        case 1:
            u = std::cos(t);
            du = -std::sin(t);
            d2u = -u;
            break;
        case 2:
            u = bessel_j0(t);
            du = -bessel_j1(t);
            d2u = bessel_j1(t) / t - u; // J0'' via J1' = J0 - J1/t
            break;
        case 3:
            u = sinc(t);
            du = sinc_deriv(t);
            d2u = sinc_second(t);
            break;
        default: {
            const SeriesResult s = series_sums(t);
            if (!s.converged)
                throw ConvergenceError("upsilon: series not converged within max_terms",
                                       s.value);
            u = s.value;
            du = s.d1;
            d2u = s.d2;
            break;
        }
    }
    return d2u + (dim_ - 1.0) / t * du + u;
}

double UpsilonEvaluator::eval_which(double t, Which which) const {
    return which == Which::function ? eval(t) : eval_derivative(t);
}

std::vector<double> UpsilonEvaluator::zeros_in(double a, double b, Which which) const {
    if (!(a >= 0.0) || !(b > a) || !std::isfinite(b))
        throw std::invalid_argument("zeros_in: requires 0 <= a < b, finite");
    const double scan_step = std::numbers::pi / 8.0;
    std::vector<double> roots;

    auto push_root = [&roots](double r) {
        if (roots.empty() || r - roots.back() > 1e-12) roots.push_back(r);
    };

    double x0 = a;
    double f0 = eval_which(x0, which);
    if (f0 == 0.0) push_root(x0);
    while (x0 < b) {
        const double x1 = std::min(x0 + scan_step, b);
        const double f1 = eval_which(x1, which);
        if (f1 == 0.0) {
            push_root(x1);
        } else if (f0 != 0.0 && std::signbit(f0) != std::signbit(f1)) {
            double lo = x0, hi = x1, flo = f0;
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                const double fm = eval_which(mid, which);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(flo) != std::signbit(fm)) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            push_root(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

double UpsilonEvaluator::envelope_coefficient() const {
    if (!envelope_ready_.load(std::memory_order_acquire)) {
        std::lock_guard<std::mutex> lock(envelope_mutex_);
        if (envelope_ready_.load(std::memory_order_relaxed)) return envelope_c_;
        const double lo = 1.0, hi = 200.0;
        const double step = 1.0 / 64.0;
        const double half_exp = (dim_ - 1.0) / 2.0;
        auto weighted = [&](double t) { return std::abs(eval(t)) * std::pow(t, half_exp); };
        double best_t = lo, best = weighted(lo);
        for (double t = lo + step; t <= hi; t += step) {
            const double w = weighted(t);
            if (w > best) {
                best = w;
                best_t = t;
            }
        }
        // local refinement (golden-section) around the scan maximum
        double a = std::max(lo, best_t - step), b = std::min(hi, best_t + step);
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = weighted(c), fd = weighted(d);
        for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = weighted(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = weighted(d);
            }
        }
        envelope_c_ = std::max(best, std::max(fc, fd));
        envelope_ready_.store(true, std::memory_order_release);
    }
    return envelope_c_;
}

double UpsilonEvaluator::envelope_bound(double t) const {
    if (!(t >= 1.0)) throw std::invalid_argument("envelope_bound: requires t >= 1");
    return envelope_coefficient() * std::pow(t, -(dim_ - 1.0) / 2.0);
}

} // namespace cdiff
