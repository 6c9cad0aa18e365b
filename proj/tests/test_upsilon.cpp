#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cdiff/bessel.hpp"
#include "cdiff/errors.hpp"
#include "cdiff/rng.hpp"
#include "cdiff/upsilon.hpp"

using cdiff::UpsilonEvaluator;
using Which = cdiff::UpsilonEvaluator::Which;

namespace {
constexpr double kPi = std::numbers::pi;

struct Ref {
    int dim;
    double t;
    double value;
};

// Frozen 40-digit reference values (Gamma(N/2) (2/t)^{N/2-1} J_{N/2-1}(t),
// cross-checked against direct series summation at 300 terms).
constexpr Ref kUpsilonRefs[] = {
    {1, 0.25, 0.96891242171064478414}, {1, 1.0, 0.5403023058681397174},
    {1, 3.5, -0.9364566872907963377},  {1, 10.0, -0.83907152907645245226},
    {1, 27.5, -0.71488696877966510272},{2, 0.25, 0.98443592929585270492},
    {2, 1.0, 0.76519768655796655145},  {2, 3.5, -0.38012773998726337738},
    {2, 10.0, -0.2459357644513483352}, {2, 27.5, -0.00099222890506740516315},
    {3, 0.25, 0.98961583701809171839}, {3, 1.0, 0.84147098480789650665},
    {3, 3.5, -0.10022377933989138518}, {3, 10.0, -0.05440211108893698134},
    {3, 27.5, 0.025426910242003555306},{4, 0.25, 0.99220781858181538185},
    {4, 1.0, 0.88010117148986703192},  {4, 3.5, 0.078501444207044106124},
    {4, 10.0, 0.0086945492337722873339},{4, 27.5, 0.011064864960338686657},
    {5, 0.25, 0.99376393475745284365}, {5, 1.0, 0.90350603681927036775},
    {5, 3.5, 0.2047917325594052945},   {5, 10.0, 0.023540082539625464128},
    {5, 27.5, 0.0029367823300033136847},{6, 0.25, 0.9948018286032226469},
    {6, 1.0, 0.91922787945520384376},  {6, 3.5, 0.29951293661669060147},
    {6, 10.0, 0.020370425094809649803},{6, 27.5, 0.00012754611692330411181},
    {7, 0.25, 0.99554345744667006407}, {7, 1.0, 0.93052578017060791653},
    {7, 3.5, 0.37348838191750613837},  {7, 10.0, 0.01169132904428436682},
    {7, 27.5, -0.0004460851817256246272},{8, 0.25, 0.99609984822038977832},
    {8, 1.0, 0.93904099116808348411},  {8, 3.5, 0.43300210757808292966},
    {8, 10.0, 0.0028022102066489669925},{8, 27.5, -0.00034710168891500057002},
    {4, 2.0, 0.5767248077568733872},   {5, 2.0, 0.65309666246998742602},
};

constexpr Ref kDerivativeRefs[] = {
    {1, 0.5, -0.47942553860420300027}, {2, 1.0, -0.44005058574493351596},
    {4, 3.5, -0.26207381953960427629}, {5, 10.0, -0.02338265808856873364},
    {6, 2.0, -0.2578864989488041022},  {8, 27.5, 0.00010355952127381193058},
    {2, 8.0, -0.23463634685391462438},
};

constexpr Ref kBesselJ0Refs[] = {
    {0, 0.5, 0.93846980724081290423},  {0, 1.0, 0.76519768655796655145},
    {0, 2.0, 0.22389077914123566805},  {0, 4.0, -0.39714980986384737229},
    {0, 7.9, 0.19436184484127831756},  {0, 8.0, 0.17165080713755390609},
    {0, 8.1, 0.14751745404437758233},  {0, 15.0, -0.014224472826780773234},
    {0, 50.0, 0.055812327669251815005},{0, 123.456, -0.07103006241837072687},
    {0, 1000.0, 0.024786686152420174561},{0, 10000.0, -0.0070961603533888014773},
};

constexpr Ref kBesselJ1Refs[] = {
    {1, 0.5, 0.24226845767487388638}, {1, 2.0, 0.5767248077568733872},
    {1, 7.9, 0.21917939992175114408}, {1, 8.1, 0.24760776698159291818},
    {1, 15.0, 0.20510403861352276115},{1, 123.456, -0.01083958485652043097},
    {1, 1000.0, 0.0047283119070895239176},
};

// First zeros of J0 (frozen from a 40-digit bisection oracle).
constexpr double kJ0Zeros[] = {2.4048255576957727686, 5.5200781102863106496,
                               8.653727912911012217, 11.791534439014281614};
} // namespace

TEST_CASE("bessel j0/j1 against frozen references") {
    for (const Ref& r : kBesselJ0Refs)
        CHECK(std::abs(cdiff::bessel_j0(r.t) - r.value) < 1e-12);
    for (const Ref& r : kBesselJ1Refs)
        CHECK(std::abs(cdiff::bessel_j1(r.t) - r.value) < 1e-12);
    CHECK(cdiff::bessel_j0(0.0) == 1.0);
    CHECK(cdiff::bessel_j1(0.0) == 0.0);
    CHECK(cdiff::bessel_j1(-2.0) == doctest::Approx(-0.5767248077568733872).epsilon(1e-13));
}

TEST_CASE("series coefficients") {
    const auto sc3 = cdiff::SeriesCoefficients::compute(3, 12);
    CHECK(sc3.a[0] == 1.0);
    double factorial = 1.0; // (2j+1)!
    for (std::size_t j = 0; j < sc3.a.size(); ++j) {
        if (j > 0) factorial *= (2.0 * j) * (2.0 * j + 1.0);
        CHECK(sc3.a[j] == doctest::Approx(1.0 / factorial).epsilon(1e-14));
    }
    for (int dim : {1, 2, 5, 9}) {
        const auto sc = cdiff::SeriesCoefficients::compute(dim, 20);
        CHECK(sc.a[0] == 1.0);
        for (double a : sc.a) CHECK(a > 0.0);
    }
}

TEST_CASE("closed forms match frozen references") {
    for (const Ref& r : kUpsilonRefs) {
        const UpsilonEvaluator ev(r.dim);
        CHECK(std::abs(ev.eval(r.t) - r.value) < 1e-12);
    }
}

TEST_CASE("normalization at the origin is exact") {
    for (int dim = 1; dim <= 9; ++dim) {
        const UpsilonEvaluator ev(dim);
        CHECK(ev.eval(0.0) == 1.0);
        CHECK(ev.eval_derivative(0.0) == 0.0);
    }
}

TEST_CASE("spot values from the interdimension recurrence") {
    const UpsilonEvaluator ev1(1), ev3(3), ev4(4), ev5(5);
    CHECK(ev1.eval(kPi) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(ev3.eval(kPi)) < 1e-15);                 // sinc(pi) = 0
    CHECK(ev3.eval(0.0) == 1.0);
    CHECK(ev5.eval(kPi) == doctest::Approx(3.0 / (kPi * kPi)).epsilon(1e-13));
    CHECK(ev3.eval_by_recurrence(2.0) ==
          doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-13));
    CHECK(ev5.eval_by_recurrence(2.0) ==
          doctest::Approx(3.0 * (std::sin(2.0) - 2.0 * std::cos(2.0)) / 8.0).epsilon(1e-13));
    // U_4(2) = -2 J0'(2)/2 = J1(2)
    CHECK(ev4.eval_by_recurrence(2.0) ==
          doctest::Approx(cdiff::bessel_j1(2.0)).epsilon(1e-13));
}

TEST_CASE("derivatives: frozen references and finite differences") {
    for (const Ref& r : kDerivativeRefs) {
        const UpsilonEvaluator ev(r.dim);
        CHECK(std::abs(ev.eval_derivative(r.t) - r.value) < 1e-12);
    }
    const UpsilonEvaluator ev3(3);
    CHECK(ev3.eval_derivative(kPi) == doctest::Approx(-1.0 / kPi).epsilon(1e-12));
    // independent central-difference oracle
    const double h = 1e-6;
    for (int dim : {2, 4, 6, 7}) {
        const UpsilonEvaluator ev(dim);
        for (double t : {0.7, 2.3, 5.1}) {
            const double fd = (ev.eval(t + h) - ev.eval(t - h)) / (2.0 * h);
            CHECK(ev.eval_derivative(t) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("series and closed forms agree for N in {1,2,3}") {
    cdiff::rng::Stream rs(20240817);
    for (int dim = 1; dim <= 3; ++dim) {
        const UpsilonEvaluator ev(dim);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double t = 50.0 * rs.next_unit();
            worst = std::max(worst, std::abs(ev.eval_by_series(t) - ev.eval(t)));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("series matches the large-t recurrence path for N >= 4") {
    for (int dim : {4, 5, 6, 7, 8}) {
        const UpsilonEvaluator ev(dim);
        for (double t = 4.2; t <= 40.0; t += 1.7) {
            CHECK(std::abs(ev.eval_by_series(t) - ev.eval(t)) < 1e-11);
        }
    }
}

TEST_CASE("recurrence consistency for N in {3..8}") {
    for (int dim = 3; dim <= 8; ++dim) {
        const UpsilonEvaluator ev(dim);
        for (double t = 0.1; t <= 30.0; t += 0.37) {
            CHECK(std::abs(ev.eval(t) - ev.eval_by_recurrence(t)) < 1e-9);
        }
    }
}

TEST_CASE("ode residual vanishes") {
    for (int dim = 1; dim <= 8; ++dim) {
        const UpsilonEvaluator ev(dim);
        for (double t = 0.1; t <= 30.0; t += 0.73) {
            CHECK(std::abs(ev.ode_residual(t)) < 1e-8);
        }
    }
    const UpsilonEvaluator ev3(3), ev2(2), ev6(6);
    CHECK(std::abs(ev3.ode_residual(1.0)) < 1e-10);
    CHECK(std::abs(ev2.ode_residual(5.0)) < 1e-10);
    CHECK(std::abs(ev6.ode_residual(3.0)) < 1e-8);
}

TEST_CASE("boundedness |U| <= 1") {
    for (int dim = 1; dim <= 8; ++dim) {
        const UpsilonEvaluator ev(dim);
        for (double t = 0.0; t <= 60.0; t += 0.11) {
            CHECK(std::abs(ev.eval(t)) <= 1.0 + 1e-14);
        }
    }
}

TEST_CASE("zeros: closed-form lattices") {
    const UpsilonEvaluator ev1(1);
    const auto z1 = ev1.zeros_in(0.0, 7.0);
    REQUIRE(z1.size() == 2);
    CHECK(z1[0] == doctest::Approx(kPi / 2).epsilon(1e-11));
    CHECK(z1[1] == doctest::Approx(3 * kPi / 2).epsilon(1e-11));

    const UpsilonEvaluator ev3(3);
    const auto z3 = ev3.zeros_in(0.0, 7.0);
    REQUIRE(z3.size() == 2);
    CHECK(z3[0] == doctest::Approx(kPi).epsilon(1e-11));
    CHECK(z3[1] == doctest::Approx(2 * kPi).epsilon(1e-11));

    const UpsilonEvaluator ev2(2);
    const auto z2 = ev2.zeros_in(0.0, 6.0);
    REQUIRE(z2.size() == 2);
    CHECK(z2[0] == doctest::Approx(kJ0Zeros[0]).epsilon(1e-11));
    CHECK(z2[1] == doctest::Approx(kJ0Zeros[1]).epsilon(1e-11));
}

TEST_CASE("zeros are simple and interlace with the derivative's") {
    for (int dim = 1; dim <= 8; ++dim) {
        const UpsilonEvaluator ev(dim);
        const auto roots = ev.zeros_in(0.0, 25.0);
        CHECK(!roots.empty());
        for (std::size_t i = 0; i < roots.size(); ++i) {
            CHECK(std::abs(ev.eval_derivative(roots[i])) > 1e-8);
            if (i > 0) CHECK(roots[i] > roots[i - 1]);
        }
        // derivative zeros: t = 0 is one (U'(0) = 0), the rest are simple
        const auto droots = ev.zeros_in(0.0, 25.0, Which::derivative);
        CHECK(!droots.empty());
        CHECK(droots.front() == 0.0);
    }
}

TEST_CASE("envelope bound") {
    const UpsilonEvaluator ev1(1);
    CHECK(ev1.envelope_coefficient() == 1.0); // |cos| peaks at exactly 1
    CHECK(ev1.envelope_bound(10.0) == 1.0);

    const UpsilonEvaluator ev2(2);
    // asymptotic amplitude sqrt(2/pi) of J0
    CHECK(ev2.envelope_coefficient() ==
          doctest::Approx(0.79788456080286535588).epsilon(2e-3));
    CHECK(ev2.envelope_bound(100.0) == doctest::Approx(0.0798).epsilon(5e-3));

    const UpsilonEvaluator ev3(3);
    CHECK(ev3.envelope_bound(10.0) >= std::abs(ev3.eval(10.0)));

    for (int dim = 1; dim <= 6; ++dim) {
        const UpsilonEvaluator ev(dim);
        for (double t = 1.0; t <= 200.0; t += 0.497) {
            CHECK(std::abs(ev.eval(t)) <= ev.envelope_bound(t) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("error paths") {
    const UpsilonEvaluator ev(5);
    CHECK_THROWS_AS(ev.eval(-1.0), std::domain_error);
    CHECK_THROWS_AS(ev.eval(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(ev.eval_by_recurrence(0.0), std::domain_error);
    CHECK_THROWS_AS(UpsilonEvaluator(0), std::invalid_argument);
    CHECK_THROWS_AS(UpsilonEvaluator(3, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(UpsilonEvaluator(3, 1e-14, 0), std::invalid_argument);
    CHECK_THROWS_AS(ev.zeros_in(5.0, 1.0), std::invalid_argument);

    // truncation failure carries the partial sum
    const UpsilonEvaluator tight(6, 1e-14, 2);
    try {
        (void)tight.eval(3.0); // series regime (9 <= 12), needs > 2 terms
        CHECK(false);
    } catch (const cdiff::ConvergenceError& e) {
        CHECK(std::isfinite(e.partial_value));
        CHECK(e.partial_value != 0.0);
    }

    const UpsilonEvaluator ev2(2);
    CHECK_THROWS_AS(ev2.eval_by_recurrence(1.0), std::invalid_argument);
    CHECK_THROWS_AS(ev2.envelope_bound(0.5), std::invalid_argument);
}
