#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jumplab/eigensolve.hpp"
#include "jumplab/errors.hpp"
#include "oracles.hpp"

using namespace jumplab;

namespace {
constexpr double kPi = 3.14159265358979323846;

struct Problem {
    Grid grid;
    RateField rate;
    JumpMeasure measure;

    Problem(const RatePreset& r, const JumpPreset& j, int n)
        : grid(Grid::uniform(n)),
          rate(build_rate_field(r, grid)),
          measure(build_jump_measure(j, grid)) {}
};

}  // namespace

TEST_CASE("base Dirichlet eigenvalue") {
    const Problem p(RatePreset::constant(), JumpPreset::uniform(), 2000);
    const double ls = base_dirichlet_eigenvalue(0.0, p.rate, p.grid);
    const double h = p.grid.h;
    const double discrete = (1.0 - std::cos(kPi * h)) / (h * h);
    CHECK(ls == doctest::Approx(discrete).epsilon(1e-10));
    CHECK(ls == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-5));

    // constant rate just shifts the spectrum
    const double shifted = base_dirichlet_eigenvalue(100.0, p.rate, p.grid);
    CHECK(shifted == doctest::Approx(100.0 + discrete).epsilon(1e-10));
    CHECK(shifted > 100.0);
}

TEST_CASE("fixed point residual at lambda = 0 matches the closed form") {
    const Problem p(RatePreset::constant(), JumpPreset::uniform(), 2000);
    const double g0 = fixed_point_residual(0.0, 100.0, p.rate, p.measure, p.grid);
    const double oracle = oracles::fixed_point_map_uniform(0.0, 100.0);
    CHECK(oracle == doctest::Approx(16.4716).epsilon(1e-4));
    CHECK(g0 == doctest::Approx(oracle).epsilon(2e-4));
    CHECK(g0 > 0.0);
}

TEST_CASE("reference eigenvalue gamma=100, uniform jumps") {
    const Problem p(RatePreset::constant(), JumpPreset::uniform(), 2000);
    const double oracle = oracles::lambda0_uniform(100.0);
    CHECK(oracle == doctest::Approx(15.3731).epsilon(1e-4));

    const EigenResult fp = principal_eigenvalue_fixed_point(100.0, p.rate, p.measure, p.grid);
    CHECK(fp.lambda0 == doctest::Approx(15.373).epsilon(0.0015));
    CHECK(fp.lambda0 == doctest::Approx(oracle).epsilon(1e-4));
    CHECK(fp.method == EigenMethod::fixed_point);
    CHECK(fp.lambda0 < fp.lambda_star);
    CHECK(fp.residual <= 1e-6);
    CHECK(fp.iterations <= 200);

    // the root is G(lambda0) = 0
    CHECK(std::abs(fixed_point_residual(fp.lambda0, 100.0, p.rate, p.measure, p.grid)) <= 1e-6);
}

TEST_CASE("matrix route agrees with the fixed point") {
    for (const RatePreset& r : {RatePreset::constant(), RatePreset::linear(0.5)}) {
        for (const JumpPreset& j :
             {JumpPreset::uniform(), JumpPreset::poly(1), JumpPreset::poly(2)}) {
            const Problem p(r, j, 500);
            const EigenResult fp =
                principal_eigenvalue_fixed_point(100.0, p.rate, p.measure, p.grid, 1e-11);
            const EigenResult mx =
                principal_eigenvalue_matrix(100.0, p.rate, p.measure, p.grid, 1e-13);
            CHECK(std::abs(fp.lambda0 - mx.lambda0) / fp.lambda0 <= 1e-8);
        }
    }
}

TEST_CASE("gamma = 0 falls back to the matrix route") {
    const Problem p(RatePreset::constant(), JumpPreset::uniform(), 1000);
    const EigenResult r = principal_eigenvalue_fixed_point(0.0, p.rate, p.measure, p.grid);
    CHECK(r.method == EigenMethod::matrix);
    CHECK(r.lambda0 == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-5));
}

TEST_CASE("atom measure: tiny eigenvalue against the closed form") {
    const Problem p(RatePreset::constant(), JumpPreset::atom(0.5), 2000);
    const EigenResult fp = principal_eigenvalue_fixed_point(400.0, p.rate, p.measure, p.grid, 1e-11);
    const double asymptotic = 2.0 * 400.0 * std::exp(-std::sqrt(200.0));
    CHECK(fp.lambda0 > 0.0);
    CHECK(fp.lambda0 / asymptotic > 1.0 / 1.1);
    CHECK(fp.lambda0 / asymptotic < 1.1);
    CHECK(fp.lambda0 == doctest::Approx(oracles::lambda0_atom(400.0)).epsilon(1e-4));

    const EigenResult mx = principal_eigenvalue_matrix(400.0, p.rate, p.measure, p.grid, 1e-13);
    CHECK(std::abs(fp.lambda0 - mx.lambda0) / fp.lambda0 <= 1e-6);
}

TEST_CASE("G(0) positive across configurations") {
    for (const RatePreset& r : {RatePreset::constant(), RatePreset::linear(-0.8)}) {
        for (const JumpPreset& j : {JumpPreset::uniform(), JumpPreset::poly(2),
                                    JumpPreset::atom(0.25)}) {
            const Problem p(r, j, 300);
            for (double gamma : {1.0, 30.0, 300.0}) {
                CHECK(fixed_point_residual(0.0, gamma, p.rate, p.measure, p.grid) > 0.0);
            }
        }
    }
}

TEST_CASE("reflection leaves the eigenvalue unchanged") {
    // holds for any configuration: relabeling x -> 1-x conjugates the operator
    const Problem p(RatePreset::linear(0.5), JumpPreset::atom(0.3), 800);
    const RateField rr = reflect(p.rate);
    const JumpMeasure rm = reflect(p.measure);
    const EigenResult a = principal_eigenvalue_matrix(100.0, p.rate, p.measure, p.grid, 1e-13);
    const EigenResult b = principal_eigenvalue_matrix(100.0, rr, rm, p.grid, 1e-13);
    CHECK(std::abs(a.lambda0 - b.lambda0) / a.lambda0 <= 1e-12);
}

TEST_CASE("grid refinement converges at second order") {
    const double lam250 = principal_eigenvalue_fixed_point(
        100.0, build_rate_field(RatePreset::constant(), Grid::uniform(250)),
        build_jump_measure(JumpPreset::uniform(), Grid::uniform(250)), Grid::uniform(250), 1e-12)
        .lambda0;
    const double lam501 = principal_eigenvalue_fixed_point(
        100.0, build_rate_field(RatePreset::constant(), Grid::uniform(501)),
        build_jump_measure(JumpPreset::uniform(), Grid::uniform(501)), Grid::uniform(501), 1e-12)
        .lambda0;
    const double lam1003 = principal_eigenvalue_fixed_point(
        100.0, build_rate_field(RatePreset::constant(), Grid::uniform(1003)),
        build_jump_measure(JumpPreset::uniform(), Grid::uniform(1003)), Grid::uniform(1003),
        1e-12)
        .lambda0;
    const double ratio = (lam250 - lam501) / (lam501 - lam1003);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}

TEST_CASE("Richardson extrapolation beats the plain grid value") {
    const double oracle = oracles::lambda0_uniform(100.0);
    const RichardsonEigen r = principal_eigenvalue_richardson(
        100.0, RatePreset::constant(), JumpPreset::uniform(), 500, EigenMethod::fixed_point,
        1e-12);
    const double plain_err = std::abs(r.lambda_h - oracle);
    const double rich_err = std::abs(r.lambda_richardson - oracle);
    CHECK(rich_err * 5.0 < plain_err);
}

TEST_CASE("sublinearity of lambda0 in gamma") {
    double previous = 1e300;
    const double expected[] = {0.154, 0.046, 0.0143};
    int idx = 0;
    for (double gamma : {100.0, 1000.0, 10000.0}) {
        const double oracle_ratio = oracles::lambda0_uniform(gamma) / gamma;
        const Problem p(RatePreset::constant(), JumpPreset::uniform(), 2000);
        const EigenResult r = principal_eigenvalue_fixed_point(gamma, p.rate, p.measure, p.grid);
        const double ratio = r.lambda0 / gamma;
        CHECK(ratio == doctest::Approx(oracle_ratio).epsilon(2e-3));
        CHECK(ratio == doctest::Approx(expected[idx]).epsilon(0.01));
        CHECK(ratio < previous);
        previous = ratio;
        ++idx;
    }
    CHECK(previous < 0.02);
}

TEST_CASE("nonlocal operator invariants") {
    const Problem p(RatePreset::constant(), JumpPreset::poly(1), 400);
    const NonlocalOperator op = build_nonlocal_operator(50.0, p.rate, p.measure, p.grid);
    CHECK(std::abs(op.rule.total() - 1.0) <= 1e-10);
    CHECK(op.coupling.size() == static_cast<size_t>(p.grid.n_interior));
    CHECK(op.coupling[0] == doctest::Approx(50.0 * p.rate.values[0]));
}

TEST_CASE("argument validation") {
    const Problem p(RatePreset::constant(), JumpPreset::uniform(), 300);
    CHECK_THROWS_AS(principal_eigenvalue_fixed_point(10.0, p.rate, p.measure, p.grid, 0.5),
                    InvalidArgument);
    CHECK_THROWS_AS(principal_eigenvalue_fixed_point(10.0, p.rate, p.measure, p.grid, 1e-15),
                    InvalidArgument);
    CHECK_THROWS_AS(principal_eigenvalue_fixed_point(-1.0, p.rate, p.measure, p.grid),
                    InvalidArgument);
    CHECK_THROWS_AS(principal_eigenvalue(10.0, p.rate, p.measure, p.grid, EigenMethod::both),
                    InvalidArgument);

    const Problem d(RatePreset::degenerate(), JumpPreset::uniform(), 300);
    CHECK_THROWS_AS(principal_eigenvalue_fixed_point(10.0, d.rate, d.measure, d.grid),
                    InvalidArgument);
    // the dispatcher reroutes degenerate rate fields to the matrix solver
    const EigenResult r =
        principal_eigenvalue(10.0, d.rate, d.measure, d.grid, EigenMethod::fixed_point);
    CHECK(r.method == EigenMethod::matrix);
    CHECK(r.lambda0 > 0.0);
}

TEST_CASE("matrix route eigenvector is positive and max-normalized") {
    const Problem p(RatePreset::constant(), JumpPreset::uniform(), 500);
    const EigenResult r = principal_eigenvalue_matrix(100.0, p.rate, p.measure, p.grid);
    double mx = 0.0;
    for (int i = 1; i <= p.grid.n_interior; ++i) {
        CHECK(r.u_profile.value(i) > 0.0);
        mx = std::max(mx, r.u_profile.value(i));
    }
    CHECK(mx == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.u_profile.left == 0.0);
    CHECK(r.u_profile.right == 0.0);
}
