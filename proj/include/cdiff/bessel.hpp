#ifndef CDIFF_BESSEL_HPP
#define CDIFF_BESSEL_HPP

// Self-contained Bessel functions of the first kind, orders 0 and 1, plus the
// sinc family. Double precision throughout: Maclaurin series on |x| <= 8,
// Hankel asymptotic form with minimax rational modulus/phase corrections
// above. Absolute accuracy is ~2e-14 over the whole real line.

namespace cdiff {

double bessel_j0(double x);
double bessel_j1(double x);

// sin(x)/x with the continuous extension sinc(0) = 1, and its first two
// derivatives (series near 0 to avoid cancellation).
double sinc(double x);
double sinc_deriv(double x);
double sinc_second(double x);

} // namespace cdiff

#endif
