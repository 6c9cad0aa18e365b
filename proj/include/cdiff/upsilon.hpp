#ifndef CDIFF_UPSILON_HPP
#define CDIFF_UPSILON_HPP

#include <atomic>
#include <cstddef>
#include <mutex>
#include <vector>

namespace cdiff {

// Coefficients a[j] = a_{2j} of the even power series
//   U_N(t) = sum_j (-1)^j a_{2j} t^{2j},
// a_0 = 1, a_j = a_{j-1} / ((2j)(N+2j-2)). All coefficients are positive.
// For N = 3 they reduce to 1/(2j+1)!.
struct SeriesCoefficients {
    std::vector<double> a;
    static SeriesCoefficients compute(int dimension, std::size_t count);
};

// Evaluator for the radial spectral profile U_N: the solution of
//   U'' + (N-1)/t U' + U = 0,  U(0) = 1, U'(0) = 0,
// which is cos, J0 and sinc for N = 1, 2, 3. Dispatch:
//   N <= 3          closed forms,
//   N >= 4, t^2<=2N compensated (double-double) power series,
//   N >= 4, t^2> 2N descent of the interdimension recurrence
//                   U_N = -(N-2)/t U'_{N-2} to the trigonometric base cases.
// The switchover keeps full double accuracy: the series loses ~t^2/2 digits
// to alternating cancellation, the recurrence is stable for t ~> sqrt(N).
//
// Instances are immutable after construction and safe to share across
// threads; all evaluation methods are const and reentrant.
class UpsilonEvaluator {
  public:
    enum class Which { function, derivative };

    explicit UpsilonEvaluator(int dimension, double truncation_tol = 1e-14,
                              int max_terms = 400);

    UpsilonEvaluator(const UpsilonEvaluator& other);
    UpsilonEvaluator& operator=(const UpsilonEvaluator& other);

    int dimension() const noexcept { return dim_; }
    double truncation_tol() const noexcept { return tol_; }
    int max_terms() const noexcept { return max_terms_; }

    // U_N(t) for t >= 0. Throws std::domain_error on non-finite or negative t,
    // ConvergenceError (carrying the partial sum) if the series does not meet
    // truncation_tol within max_terms.
    double eval(double t) const;

    // U'_N(t); exactly 0 at t = 0.
    double eval_derivative(double t) const;

    // U_N(t) by descending the recurrence chain to N-2k in {1,2}. Requires
    // t > 0 and N >= 3 (the recurrence carries a 1/t singularity; use eval()
    // at t = 0).
    double eval_by_recurrence(double t) const;

    // U_N(t) summed directly from the defining power series (compensated
    // arithmetic), for every N including the closed-form dimensions.
    // Accurate to ~1e-12 absolute for t up to ~55; the independent
    // cross-check target for closed forms and recurrence.
    double eval_by_series(double t) const;

    // U''(t) + (N-1)/t U'(t) + U(t), which is 0 up to roundoff/truncation.
    // Second derivative from the termwise series (closed form for N <= 3).
    // Test instrumentation; requires t > 0.
    double ode_residual(double t) const;

    // All simple roots of U_N (or U'_N) in [a, b], strictly increasing.
    // Sign-change scan at step pi/8 followed by bisection to 1e-12.
    std::vector<double> zeros_in(double a, double b, Which which = Which::function) const;

    // C_N t^{-(N-1)/2} with C_N = max over a scan of [1, 200] of
    // |U_N(t)| t^{(N-1)/2} (refined locally); requires t >= 1.
    double envelope_bound(double t) const;

    // The scan-maximized constant C_N (computed once, cached).
    double envelope_coefficient() const;

  private:
    struct SeriesResult {
        double value, d1, d2;
        bool converged;
    };

    SeriesResult series_sums(double t) const;
    // (U_M, U'_M) propagated up the recurrence chain from the base case.
    void recurrence_pair(double t, double& value, double& deriv) const;
    double eval_which(double t, Which which) const;

    int dim_;
    double tol_;
    int max_terms_;

    mutable std::mutex envelope_mutex_;
    mutable std::atomic<bool> envelope_ready_{false};
    mutable double envelope_c_ = 0.0;
};

} // namespace cdiff

#endif
