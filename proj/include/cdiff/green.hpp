#ifndef CDIFF_GREEN_HPP
#define CDIFF_GREEN_HPP

#include <vector>

#include "cdiff/params.hpp"

namespace cdiff {

// Green functions of the finite-speed and classical diffusion models in the
// wave-number/time domain. All functions of k depend on |k| only (radial
// symmetry) and carry the symmetric (2 pi)^{-N/2} transform convention; the
// gridded pipeline works with the normalized multiplier instead, and this is
// the one place the two conventions are converted.

// (2 pi)^{-N/2} U_N(k c tau)^m U_N(k c s) with (m, s) = split_time(t).
double ghat_causal(const DiffusionParams& p, double k, double t);

// (2 pi)^{-N/2} exp(-D0 k^2 t).
double ghat_standard(const DiffusionParams& p, double k, double t);

// (2 pi)^{-N/2} exp(-D# k^2 t), D# = D0 / ln 2 (base-2 reference kernel).
double ghat_perturbed(const DiffusionParams& p, double k, double t);

// (2 pi)^{N/2} ghat_causal: the dimensionless per-mode decay factor used by
// the discrete spectral pipeline. Equals 1 at k = 0 (mass conservation).
double spectral_multiplier(const DiffusionParams& p, double k, double t);

// Like spectral_multiplier but for the time derivative of the evolved state:
// U_N(k c tau)^m * c k * U'_N(k c s).
double spectral_multiplier_dt(const DiffusionParams& p, double k, double t);

// The zero lattice of the per-step spectral factors U_N(k c tau) and
// U_N(k c s) in (0, k_max], sorted, duplicates within 1e-9 merged. For
// t > tau this is exactly the zero set of ghat_causal(., t); for t <= tau it
// additionally contains the step-kernel lattice that every later multiple of
// tau shares.
std::vector<double> zero_set(const DiffusionParams& p, double t, double k_max);

// Envelope of k -> ghat_causal(k, T) for large k: decays like
// coefficient * k^{-exponent} with exponent = (m+1)(N-1)/2 and
// coefficient a_T = (c tau)^{m (N-1)/2} (c s)^{(N-1)/2}.
struct EnvelopeDecay {
    double exponent;
    double coefficient;
};

EnvelopeDecay envelope_decay_rate(const DiffusionParams& p, double T);

// y^m for integral m >= 0 by binary exponentiation (deterministic, handles
// negative bases exactly as repeated multiplication would).
double ipow(double y, long m);

} // namespace cdiff

#endif
