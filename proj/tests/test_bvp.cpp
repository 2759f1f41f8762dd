#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jumplab/bvp.hpp"
#include "jumplab/errors.hpp"
#include "oracles.hpp"

using namespace jumplab;

namespace {

RateField constant_rate(const Grid& g) { return build_rate_field(RatePreset::constant(), g); }

double max_node_error_u(double lambda, double gamma, int n) {
    const Grid g = Grid::uniform(n);
    const ScalarField u = solve_u(lambda, gamma, constant_rate(g), g);
    double err = 0.0;
    for (int i = 1; i <= n; ++i) {
        err = std::max(err, std::abs(u.value(i) - oracles::constant_rate_u(lambda, gamma, g.x(i))));
    }
    return err;
}

}  // namespace

TEST_CASE("assembly rows") {
    const Grid g = Grid::uniform(3);  // h = 0.25 -> 1/h^2 = 16
    const RateField v = constant_rate(g);

    const TridiagonalOperator pure = assemble(0.0, 0.0, v, g);
    for (double d : pure.diag) CHECK(d == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(pure.sub[1] == doctest::Approx(-8.0).epsilon(1e-15));
    CHECK(pure.super[0] == doctest::Approx(-8.0).epsilon(1e-15));

    const TridiagonalOperator shifted = assemble(0.0, 2.0, v, g);
    for (double d : shifted.diag) CHECK(d == doctest::Approx(18.0).epsilon(1e-15));

    // lambda = gamma V cancels the zeroth-order term exactly
    const TridiagonalOperator cancel = assemble(2.0, 2.0, v, g);
    for (double d : cancel.diag) CHECK(d == doctest::Approx(16.0).epsilon(1e-15));

    CHECK_THROWS_AS(assemble(0.0, 2e5, v, g), InvalidArgument);
    CHECK_THROWS_AS(assemble(0.0, -1.0, v, g), InvalidArgument);
}

TEST_CASE("closed form boundary and interior values") {
    const ClosedFormUV at_boundary = closed_form_constant_rate(0.0, 2.0, 1.0, 0.0);
    CHECK(at_boundary.u == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(at_boundary.v == doctest::Approx(0.0));

    const ClosedFormUV mid = closed_form_constant_rate(0.0, 2.0, 1.0, 0.5);
    CHECK(mid.u == doctest::Approx(1.0 / std::cosh(1.0)).epsilon(1e-14));
    CHECK(mid.u == doctest::Approx(0.6480543).epsilon(1e-6));

    // integral of the profile: (2/kappa) tanh(kappa/2), kappa = 20
    CHECK(closed_form_mean_u(0.0, 200.0, 1.0) ==
          doctest::Approx(0.1 * std::tanh(10.0)).epsilon(1e-14));

    CHECK_THROWS_AS(closed_form_constant_rate(3.0, 2.0, 1.0, 0.5), OutOfDomain);
}

TEST_CASE("solve_u matches the closed form") {
    const Grid g = Grid::uniform(2000);
    const ScalarField u = solve_u(0.0, 2.0, constant_rate(g), g);
    const int mid = 1001;
    const double x = g.x(mid);
    CHECK(u.value(mid) == doctest::Approx(oracles::constant_rate_u(0.0, 2.0, x)).epsilon(1e-7));
    CHECK(max_node_error_u(0.0, 2.0, 2000) <= 1e-6);
}

TEST_CASE("solve_u with lambda = gamma is identically one") {
    const Grid g = Grid::uniform(500);
    const ScalarField u = solve_u(2.0, 2.0, constant_rate(g), g);
    for (int i = 1; i <= g.n_interior; ++i) {
        CHECK(u.value(i) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("huge gamma underflows gracefully") {
    const Grid g = Grid::uniform(2000);
    const ScalarField u = solve_u(0.0, 5000.0, constant_rate(g), g);
    const double center = u.value(1000);
    CHECK(center >= 0.0);
    CHECK(center <= 1e-20);  // true value about 3.9e-22
}

TEST_CASE("solve_v examples") {
    const Grid g = Grid::uniform(2000);
    const RateField v1 = constant_rate(g);

    // gamma = 2: v = (1-u)/2
    const ScalarField v = solve_v(0.0, 2.0, v1, g);
    const double ref = oracles::constant_rate_v(0.0, 2.0, g.x(1000));
    CHECK(v.value(1000) == doctest::Approx(ref).epsilon(1e-7));
    CHECK(ref == doctest::Approx(0.1759729).epsilon(1e-5));

    // gamma = 0: classical torsion function x(1-x), exact for the scheme
    const ScalarField t = solve_v(0.0, 0.0, v1, g);
    for (int i : {1, 500, 1000, 1999}) {
        const double x = g.x(i);
        CHECK(t.value(i) == doctest::Approx(x * (1.0 - x)).epsilon(1e-10));
    }
    const Grid g_odd = Grid::uniform(1999);  // x = 0.5 is a node here
    const ScalarField t_odd = solve_v(0.0, 0.0, constant_rate(g_odd), g_odd);
    CHECK(t_odd.value(1000) == doctest::Approx(0.25).epsilon(1e-10));

    // gamma = 1000: gamma*v -> 1/V in the interior
    const ScalarField w = solve_v(0.0, 1000.0, v1, g);
    CHECK(1000.0 * w.value(1000) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("second-order convergence against the closed form") {
    const double e1 = max_node_error_u(0.0, 2.0, 1000);
    const double e2 = max_node_error_u(0.0, 2.0, 2000);
    const double ratio = e1 / e2;
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}

TEST_CASE("maximum principle in the positive regime") {
    const Grid g = Grid::uniform(800);
    const RateField v1 = constant_rate(g);
    for (double lambda : {0.0, 1.0, 1.9}) {
        const ScalarField u = solve_u(lambda, 2.0, v1, g);
        const ScalarField v = solve_v(lambda, 2.0, v1, g);
        for (int i = 1; i <= g.n_interior; ++i) {
            CHECK(u.value(i) > 0.0);
            CHECK(u.value(i) <= 1.0 + 1e-12);
            CHECK(v.value(i) > 0.0);
        }
    }
}

TEST_CASE("monotonicity in the potential") {
    // lowering V by a constant is the same operator as raising lambda by
    // gamma*eps, so u must increase nodewise with lambda
    const Grid g = Grid::uniform(400);
    const RateField v1 = constant_rate(g);
    const ScalarField lo = solve_u(0.0, 10.0, v1, g);
    const ScalarField hi = solve_u(0.5, 10.0, v1, g);
    for (int i = 1; i <= g.n_interior; ++i) {
        CHECK(hi.value(i) > lo.value(i));
    }
}

TEST_CASE("symmetric rate gives symmetric solutions") {
    const Grid g = Grid::uniform(501);
    const RateField deg = build_rate_field(RatePreset::degenerate(), g);
    const ScalarField u = solve_u(0.0, 50.0, deg, g);
    const ScalarField v = solve_v(0.0, 50.0, deg, g);
    const int n = g.n_interior;
    for (int i = 1; i <= n; ++i) {
        CHECK(u.value(i) == doctest::Approx(u.value(n + 1 - i)).epsilon(1e-12));
        CHECK(v.value(i) == doctest::Approx(v.value(n + 1 - i)).epsilon(1e-12));
    }
}

TEST_CASE("boundary normal derivatives") {
    const Grid g = Grid::uniform(1000);

    ScalarField parabola;
    parabola.interior.resize(1000);
    for (int i = 1; i <= 1000; ++i) {
        const double x = g.x(i);
        parabola.interior[static_cast<size_t>(i) - 1] = x * (1.0 - x);
    }
    const auto [d0, d1] = boundary_normal_derivative(parabola, g);
    CHECK(d0 == doctest::Approx(1.0).epsilon(1e-9));  // scheme exact for quadratics
    CHECK(d1 == doctest::Approx(1.0).epsilon(1e-9));

    ScalarField ones(std::vector<double>(1000, 1.0), 1.0, 1.0);
    const auto [c0, c1] = boundary_normal_derivative(ones, g);
    CHECK(c0 == doctest::Approx(0.0));
    CHECK(c1 == doctest::Approx(0.0));
}

TEST_CASE("boundary gradient approaches -sqrt(2V) at scale sqrt(gamma)") {
    const double gamma = 5000.0;
    const double lambda0 = oracles::lambda0_uniform(gamma);
    const Grid g = Grid::uniform(2829);
    const ScalarField u = solve_u(lambda0, gamma, constant_rate(g), g);
    const auto [d0, d1] = boundary_normal_derivative(u, g);
    const double scaled = d0 / std::sqrt(gamma);
    CHECK(scaled == doctest::Approx(-1.400).epsilon(0.004));
    CHECK(d0 == doctest::Approx(d1).epsilon(1e-9));
    // limit is -sqrt(2): finite-gamma offset is about lambda0/(2 gamma) relative
    CHECK(std::abs(scaled + std::sqrt(2.0)) <= 0.03);
}

TEST_CASE("singular system raises") {
    // lambda far above the spectrum makes the elimination hit a zero pivot
    // region; the factorization itself stays finite but positivity is lost,
    // and exactly at an eigenvalue the system is singular. Probe the guard
    // with the exact discrete eigenvalue of the pure Laplacian on a tiny grid.
    const Grid g = Grid::uniform(3);
    const RateField v1 = constant_rate(g);
    const double h = g.h;
    const double pi = 3.14159265358979323846;
    const double exact = (1.0 - std::cos(pi * h)) / (h * h);  // smallest eigenvalue
    bool threw_or_wild = false;
    try {
        const ScalarField u = solve_u(exact, 0.0, v1, g);
        double mx = 0.0;
        for (int i = 1; i <= 3; ++i) mx = std::max(mx, std::abs(u.value(i)));
        threw_or_wild = mx > 1e10;  // fell through to a numerically singular solve
    } catch (const SingularSystem&) {
        threw_or_wild = true;
    }
    CHECK(threw_or_wild);
}
