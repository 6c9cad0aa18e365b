#ifndef CDIFF_INVERSION_HPP
#define CDIFF_INVERSION_HPP

#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "cdiff/forward.hpp"
#include "cdiff/grid.hpp"
#include "cdiff/params.hpp"

namespace cdiff {

enum class ForwardPath { spatial, spectral };

struct LandweberConfig {
    double eta = 2.0;    // discrepancy factor, >= 2
    double delta = 0.0;  // relative L2 noise level
    int max_iters = 100;
    ForwardPath forward_path = ForwardPath::spatial;
    int stencil_points = 50;
};

enum class StopReason { discrepancy, max_iters };

struct LandweberState {
    Grid2D iterate;
    std::vector<double> residual_norms; // ||F(u_n) - w|| for n = 0, 1, ...
    std::vector<double> omegas;         // relaxation parameter of each step
    std::optional<int> stopped_at;      // discrepancy stop index, if reached
    StopReason stop_reason = StopReason::max_iters;
};

// The forward map behind the solver: either the circle-quadrature spatial
// path (the stencil is rebuilt per apply) or a cached spectral multiplier.
// The operator is self-adjoint, so adjoint() delegates to apply().
class ForwardModel {
  public:
    ForwardModel(int rows, int cols, double dx, const DiffusionParams& p, double T,
                 ForwardPath path, int stencil_points);

    Grid2D apply(const Grid2D& u) const;
    Grid2D adjoint(const Grid2D& w) const { return apply(w); }

  private:
    DiffusionParams params_;
    double time_;
    ForwardPath path_;
    int stencil_points_;
    std::shared_ptr<const SpectralOperator> spectral_;
};

// One projected-Landweber update:
//   r = F(u_n) - w,  omega = ||r||^2 / (4 ||F r||^2),
//   u_{n+1} = max(0, u_n - omega F r).
// Appends ||r|| and omega to the state's history. Throws StagnationError when
// ||F r|| vanishes while ||r|| does not (data incompatible with the range).
LandweberState landweber_step(LandweberState state, const Grid2D& w_delta,
                              const DiffusionParams& p, double T,
                              const LandweberConfig& cfg);

// Runs landweber_step until ||F(u_n) - w|| < eta * delta * ||w|| or max_iters.
// The optional stream receives one CSV row per iteration:
// iteration,residual_norm,omega,min_value,mass.
LandweberState solve_landweber(const Grid2D& w_delta, const DiffusionParams& p, double T,
                               const LandweberConfig& cfg, const Grid2D& u0,
                               std::ostream* iteration_log = nullptr);

struct MoorePenroseResult {
    Grid2D estimate;
    double masked_fraction = 0.0; // share of frequency bins set to zero
    bool heavily_masked = false;  // masked_fraction > 0.5
};

// Frequency-wise division by the causal multiplier wherever it exceeds
// zero_mask_tol in magnitude; masked bins are zeroed. A non-positive
// zero_mask_tol selects the default 1e-3 * max |multiplier|.
MoorePenroseResult moore_penrose_spectral(const Grid2D& w, const DiffusionParams& p,
                                          double T, double zero_mask_tol = -1.0);

// Exact early-time inversion from the pair (w, w2) = (F_T u, dF_T u/dt),
// T in (0, tau]: bins where |U_N(|k| c T)| >= band_split_tol divide w by it,
// the rest divide w2 by c|k| U'_N(|k| c T). Valid because the zeros of U_N
// and U'_N are simple and disjoint; a bin failing both branches means
// band_split_tol exceeds that separation and is reported as a logic error.
Grid2D time_reversal(const Grid2D& w, const Grid2D& w2, const DiffusionParams& p,
                     double T, double band_split_tol = 0.1);

} // namespace cdiff

#endif
