#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "cdiff/forward.hpp"
#include "cdiff/green.hpp"
#include "cdiff/grid.hpp"
#include "cdiff/params.hpp"
#include "cdiff/rng.hpp"
#include "cdiff/spectrum.hpp"
#include "cdiff/synthetic.hpp"

using cdiff::CircleStencil;
using cdiff::DiffusionParams;
using cdiff::Grid1D;
using cdiff::Grid2D;

namespace {

Grid2D random_grid(int rows, int cols, double dx, std::uint64_t seed) {
    Grid2D g(rows, cols, dx);
    cdiff::rng::Stream rs(seed);
    for (double& v : g.values()) v = rs.next_unit();
    return g;
}

// fraction of |mass| beyond the given radius from the grid center pixel
double mass_fraction_outside(const Grid2D& g, double radius) {
    const double cx = g.x_of(g.cols() / 2);
    const double cy = g.y_of(g.rows() / 2);
    double outside = 0.0, total = 0.0;
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c) {
            const double m = std::abs(g(r, c));
            total += m;
            if (std::hypot(g.x_of(c) - cx, g.y_of(r) - cy) > radius) outside += m;
        }
    }
    return outside / total;
}

} // namespace

TEST_CASE("circle stencil geometry") {
    const CircleStencil st = CircleStencil::make(2.5, 50);
    CHECK(st.offsets.size() == 50);
    for (const auto& o : st.offsets)
        CHECK(std::abs(std::hypot(o[0], o[1]) - 2.5) < 1e-12 * 2.5);
    // axis-aligned nodes are exact
    const CircleStencil st4 = CircleStencil::make(3.0, 4);
    CHECK(st4.offsets[0][0] == 3.0);
    CHECK(st4.offsets[0][1] == 0.0);
    CHECK(st4.offsets[1][0] == 0.0);
    CHECK(st4.offsets[1][1] == 3.0);
    CHECK(st4.offsets[2][0] == -3.0);
    CHECK(st4.offsets[3][1] == -3.0);
    CHECK_THROWS_AS(CircleStencil::make(0.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(CircleStencil::make(1.0, 3), std::invalid_argument);
}

TEST_CASE("averaging preserves constants in the interior") {
    const DiffusionParams p(1.0, 2.0, 2);
    Grid2D u(48, 48, 1.0);
    for (double& v : u.values()) v = 1.0;
    const CircleStencil st = CircleStencil::make(2.0, 50);
    const Grid2D out = cdiff::step_spatial(u, p, 2.0, st).grid;
    for (int r = 4; r < 44; ++r)
        for (int c = 4; c < 44; ++c) CHECK(out(r, c) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("unit pixel with the 4-point lattice stencil splits into quarters") {
    const DiffusionParams p(1.0, 1.0, 2);
    Grid2D u = cdiff::make_unit_pixel(9, 9, 1.0);
    const CircleStencil st = CircleStencil::make(1.0, 4);
    const Grid2D out = cdiff::step_spatial(u, p, 1.0, st).grid;
    CHECK(out(4, 5) == 0.25);
    CHECK(out(4, 3) == 0.25);
    CHECK(out(5, 4) == 0.25);
    CHECK(out(3, 4) == 0.25);
    CHECK(out(4, 4) == 0.0);
    CHECK(out.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mass conservation through spatial stepping") {
    const DiffusionParams p(1.0, 4.0, 2);
    const Grid2D u = cdiff::make_gaussian_blob(96, 96, 1.0, 0.04);
    const double mass_in = u.total_mass();
    const Grid2D out = cdiff::evolve(u, p, 8.0, 50).grid;
    CHECK(std::abs(out.total_mass() - mass_in) < 1e-3 * mass_in);
    // with full margins the quadrature itself loses nothing
    CHECK(std::abs(out.total_mass() - mass_in) < 1e-12 * mass_in);
}

TEST_CASE("step composition and commutation") {
    const DiffusionParams p(1.0, 4.0, 2);
    const Grid2D u = cdiff::make_gaussian_blob(96, 96, 1.0, 0.04);
    const CircleStencil full = CircleStencil::make(4.0, 50);
    const CircleStencil half = CircleStencil::make(2.0, 50);

    const Grid2D two_full = cdiff::evolve(u, p, 8.0, 50).grid;
    const Grid2D manual =
        cdiff::step_spatial(cdiff::step_spatial(u, p, 4.0, full).grid, p, 4.0, full).grid;
    CHECK(cdiff::l2_distance(two_full, manual) < 1e-12);

    const Grid2D mixed_a =
        cdiff::step_spatial(cdiff::step_spatial(u, p, 4.0, full).grid, p, 2.0, half).grid;
    const Grid2D mixed_b =
        cdiff::step_spatial(cdiff::step_spatial(u, p, 2.0, half).grid, p, 4.0, full).grid;
    CHECK(cdiff::l2_distance(mixed_a, mixed_b) < 1e-9);
    const Grid2D evolved = cdiff::evolve(u, p, 6.0, 50).grid;
    CHECK(cdiff::l2_distance(evolved, mixed_a) < 1e-9);
}

TEST_CASE("causality: lattice-exact stepping keeps mass inside c*T") {
    // radii 2, 2, 1 pixels: every sample lands on the lattice, so the
    // support bound is sharp
    const DiffusionParams p(1.0, 2.0, 2);
    const Grid2D u = cdiff::make_unit_pixel(32, 32, 1.0);
    const Grid2D out = cdiff::evolve(u, p, 5.0, 4).grid;
    CHECK(mass_fraction_outside(out, 5.0 + 2.0) < 1e-14);
    CHECK(out.total_mass() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("causality: generic stencil leaks only interpolation dust") {
    // off-lattice samples spread mass by up to sqrt(2) px per step through
    // the bilinear tents; measure the fraction beyond c*T + 2 dx
    const DiffusionParams p(1.0, 8.0, 2);
    const Grid2D u = cdiff::make_unit_pixel(64, 64, 1.0);
    const Grid2D out = cdiff::evolve(u, p, 20.0, 50).grid;
    const double leak = mass_fraction_outside(out, 22.0);
    MESSAGE("50-point stencil mass beyond cT + 2dx: ", leak);
    CHECK(leak < 2e-5);
    CHECK(mass_fraction_outside(out, 20.0 + 4.5) < 1e-14);
}

TEST_CASE("spectral path: mass conservation and semigroup") {
    const DiffusionParams p(1.0, 0.3, 3);
    const Grid2D u = random_grid(128, 128, 0.125, 99);
    const double mass_in = u.total_mass();

    const Grid2D once = cdiff::evolve_spectral(u, p, 0.3);
    CHECK(std::abs(once.total_mass() - mass_in) <= 1e-12 * std::abs(mass_in));

    const Grid2D twice = cdiff::evolve_spectral(once, p, 0.3);
    const Grid2D direct = cdiff::evolve_spectral(u, p, 0.6);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        num += std::pow(twice.values()[i] - direct.values()[i], 2);
        den += std::pow(direct.values()[i], 2);
    }
    CHECK(std::sqrt(num / den) < 1e-12);
}

TEST_CASE("spectral path: causality up to band-limit ringing") {
    const DiffusionParams p(1.0, 6.0, 2);
    const Grid2D u = cdiff::make_gaussian_blob(128, 128, 1.0, 0.03);
    // support radius of the truncated blob
    double r_u = 0.0;
    const double cx = u.x_of(u.cols() / 2), cy = u.y_of(u.rows() / 2);
    for (int r = 0; r < u.rows(); ++r)
        for (int c = 0; c < u.cols(); ++c)
            if (u(r, c) != 0.0)
                r_u = std::max(r_u, std::hypot(u.x_of(c) - cx, u.y_of(r) - cy));
    const Grid2D out = cdiff::evolve_spectral(u, p, 15.0);
    CHECK(mass_fraction_outside(out, r_u + 15.0 + 2.0) < 1e-6);
}

TEST_CASE("spatial and spectral paths agree on smooth fields") {
    const DiffusionParams p(1.0, 4.0, 2);
    const Grid2D u = cdiff::make_gaussian_blob(96, 96, 1.0, 0.05);
    const Grid2D spatial = cdiff::evolve(u, p, 6.0, 64).grid;
    const Grid2D spectral = cdiff::evolve_spectral(u, p, 6.0);
    CHECK(cdiff::l2_distance(spatial, spectral) / cdiff::l2_norm(spectral) < 1e-2);
}

TEST_CASE("fft round trip and hermitian symmetry") {
    const Grid2D g = random_grid(48, 40, 0.5, 4242);
    const cdiff::Spectrum s = cdiff::fft_forward(g);
    const Grid2D back = cdiff::fft_inverse(s);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(back.values()[i] - g.values()[i]) < 1e-12);
    for (int r = 0; r < s.rows(); ++r) {
        for (int c = 0; c < s.cols(); ++c) {
            const auto mirror = std::conj(s((s.rows() - r) % s.rows(),
                                            (s.cols() - c) % s.cols()));
            CHECK(std::abs(s(r, c) - mirror) < 1e-12);
        }
    }
    // Parseval under the unitary convention
    double grid_sq = 0.0, spec_sq = 0.0;
    for (double v : g.values()) grid_sq += v * v;
    for (const auto& z : s.coeffs()) spec_sq += std::norm(z);
    CHECK(grid_sq == doctest::Approx(spec_sq).epsilon(1e-13));
}

TEST_CASE("euler reference: constants, stability guard, gaussian profile") {
    const DiffusionParams p(1.0, 2.0, 2); // D0 = 0.5
    Grid2D flat(32, 32, 1.0);
    for (double& v : flat.values()) v = 3.5;
    const Grid2D kept = cdiff::evolve_euler_standard(flat, p, 4.0, 0.5);
    for (int r = 8; r < 24; ++r)
        for (int c = 8; c < 24; ++c) CHECK(kept(r, c) == doctest::Approx(3.5).epsilon(1e-13));

    CHECK_THROWS_AS(cdiff::evolve_euler_standard(flat, p, 1.0, 0.51),
                    std::invalid_argument);

    // single pixel against the closed-form heat kernel at sigma = 8 px;
    // dt below the stability bound keeps the center weight positive so the
    // two lattice parities mix
    const Grid2D u = cdiff::make_unit_pixel(128, 128, 1.0);
    const double T = 64.0;
    const Grid2D out = cdiff::evolve_euler_standard(u, p, T, 0.4);
    Grid2D ref = Grid2D::zeros_like(u);
    const double d0 = p.diffusivity();
    const double cx = ref.x_of(64), cy = ref.y_of(64);
    for (int r = 0; r < 128; ++r) {
        for (int c = 0; c < 128; ++c) {
            const double rr = std::pow(ref.x_of(c) - cx, 2) + std::pow(ref.y_of(r) - cy, 2);
            ref(r, c) = std::exp(-rr / (4.0 * d0 * T)) / (4.0 * std::numbers::pi * d0 * T);
        }
    }
    CHECK(cdiff::l2_distance(out, ref) / cdiff::l2_norm(ref) < 0.02);
}

TEST_CASE("euler update equals the 4-point stencil bit for bit") {
    const DiffusionParams p(1.0, 1.0, 2); // c tau = dx, lambda = 1/4
    const Grid2D u = random_grid(64, 64, 1.0, 777);
    const Grid2D stencil =
        cdiff::step_spatial(u, p, 1.0, CircleStencil::make(1.0, 4)).grid;
    const Grid2D euler = cdiff::evolve_euler_standard(u, p, 1.0, 1.0);
    CHECK(std::memcmp(stencil.values().data(), euler.values().data(),
                      u.size() * sizeof(double)) == 0);
}

TEST_CASE("self-adjointness") {
    const DiffusionParams p(1.0, 1.0, 2);
    const Grid2D a = random_grid(64, 64, 0.25, 1);
    const Grid2D b = random_grid(64, 64, 0.25, 2);

    // spectral path: exact up to rounding
    const Grid2D fa = cdiff::evolve_spectral(a, p, 2.5);
    const Grid2D fb = cdiff::evolve_spectral(b, p, 2.5);
    const double lhs = cdiff::inner_product(fa, b);
    const double rhs = cdiff::inner_product(a, fb);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));

    // spatial path, even stencil: the kernel is symmetric offset for offset
    const Grid2D ga = cdiff::adjoint_apply(a, p, 1.0, 50).grid;
    const Grid2D gb = cdiff::evolve(b, p, 1.0, 50).grid;
    CHECK(cdiff::inner_product(cdiff::evolve(a, p, 1.0, 50).grid, b) ==
          doctest::Approx(cdiff::inner_product(a, gb)).epsilon(1e-10));
    // adjoint_apply is evolve by contract
    for (std::size_t i = 0; i < ga.size(); ++i)
        CHECK(ga.values()[i] == cdiff::evolve(a, p, 1.0, 50).grid.values()[i]);

    // odd stencils are self-adjoint only to quadrature accuracy
    const Grid2D oa = cdiff::evolve(a, p, 1.0, 65).grid;
    const Grid2D ob = cdiff::evolve(b, p, 1.0, 65).grid;
    const double li = cdiff::inner_product(oa, b), ri = cdiff::inner_product(a, ob);
    CHECK(std::abs(li - ri) / std::abs(ri) < 1e-3);

    // delta input: adjoint equals forward (even kernel)
    const Grid2D delta = cdiff::make_unit_pixel(32, 32, 1.0);
    const Grid2D fd = cdiff::evolve(delta, p, 1.0, 50).grid;
    const Grid2D ad = cdiff::adjoint_apply(delta, p, 1.0, 50).grid;
    for (std::size_t i = 0; i < fd.size(); ++i) CHECK(fd.values()[i] == ad.values()[i]);
}

TEST_CASE("linearity of both paths") {
    const DiffusionParams p(1.0, 3.0, 2);
    const Grid2D a = random_grid(48, 48, 1.0, 5);
    const Grid2D b = random_grid(48, 48, 1.0, 6);
    Grid2D combo(48, 48, 1.0);
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo.values()[i] = 1.75 * a.values()[i] - 0.5 * b.values()[i];

    const Grid2D fc_spatial = cdiff::evolve(combo, p, 4.5, 50).grid;
    const Grid2D fa_spatial = cdiff::evolve(a, p, 4.5, 50).grid;
    const Grid2D fb_spatial = cdiff::evolve(b, p, 4.5, 50).grid;
    const Grid2D fc_spectral = cdiff::evolve_spectral(combo, p, 4.5);
    const Grid2D fa_spectral = cdiff::evolve_spectral(a, p, 4.5);
    const Grid2D fb_spectral = cdiff::evolve_spectral(b, p, 4.5);
    for (std::size_t i = 0; i < combo.size(); ++i) {
        CHECK(std::abs(fc_spatial.values()[i] - 1.75 * fa_spatial.values()[i] +
                       0.5 * fb_spatial.values()[i]) < 1e-12);
        CHECK(std::abs(fc_spectral.values()[i] - 1.75 * fa_spectral.values()[i] +
                       0.5 * fb_spectral.values()[i]) < 1e-12);
    }
}

TEST_CASE("positivity of the spatial path") {
    const DiffusionParams p(1.0, 2.0, 2);
    const Grid2D u = cdiff::make_question_mark(64, 64, 1.0);
    const Grid2D out = cdiff::evolve(u, p, 5.0, 50).grid;
    CHECK(out.min_value() >= 0.0);
}

TEST_CASE("support clipping warning") {
    const DiffusionParams p(1.0, 4.0, 2);
    Grid2D edge(32, 32, 1.0);
    edge(1, 1) = 1.0; // right at the boundary
    const auto res = cdiff::step_spatial(edge, p, 4.0, CircleStencil::make(4.0, 16));
    CHECK(res.support_clipped);
    const auto ok = cdiff::step_spatial(cdiff::make_unit_pixel(32, 32, 1.0), p, 4.0,
                                        CircleStencil::make(4.0, 16));
    CHECK(!ok.support_clipped);
}

TEST_CASE("spatial path input validation") {
    const DiffusionParams p3(1.0, 1.0, 3);
    const DiffusionParams p2(1.0, 1.0, 2);
    const Grid2D u = cdiff::make_unit_pixel(16, 16, 1.0);
    CHECK_THROWS_AS(cdiff::step_spatial(u, p3, 1.0, CircleStencil::make(1.0, 8)),
                    std::invalid_argument);
    CHECK_THROWS_AS(cdiff::step_spatial(u, p2, 1.0, CircleStencil::make(0.5, 8)),
                    std::invalid_argument);
    CHECK_THROWS_AS(cdiff::step_spatial(u, p2, 2.0, CircleStencil::make(2.0, 8)),
                    std::invalid_argument);
}

TEST_CASE("1d stepping") {
    const DiffusionParams p(1.0, 1.0, 1);
    Grid1D u(64, 1.0);
    u[32] = 1.0;
    const Grid1D out = cdiff::step_1d(u, p, 1.0);
    CHECK(out[31] == 0.5);
    CHECK(out[33] == 0.5);
    CHECK(out[32] == 0.0);
    CHECK(out.total_mass() == 1.0);

    // constants preserved away from the boundary
    Grid1D flat(64, 1.0);
    for (double& v : flat.values()) v = 2.0;
    const Grid1D kept = cdiff::step_1d(flat, p, 1.0);
    for (int i = 2; i < 62; ++i) CHECK(kept[i] == doctest::Approx(2.0).epsilon(1e-15));

    // off-lattice shift interpolates but still sums to the input mass
    const DiffusionParams pf(1.0, 0.75, 1);
    const Grid1D frac = cdiff::step_1d(u, pf, 0.75);
    CHECK(frac.total_mass() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(frac[31] == doctest::Approx(0.375).epsilon(1e-13)); // tent weights
    CHECK(frac[32] == doctest::Approx(0.25).epsilon(1e-13));

    // m steps keep everything within c*(m s) of the source
    Grid1D walk = u;
    for (int i = 0; i < 8; ++i) walk = cdiff::step_1d(walk, p, 1.0);
    for (int i = 0; i < walk.size(); ++i)
        if (std::abs(i - 32) > 8) CHECK(walk[i] == 0.0);

    CHECK_THROWS_AS(cdiff::step_1d(u, DiffusionParams(1.0, 1.0, 2), 1.0),
                    std::invalid_argument);
}
