#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jumplab/errors.hpp"
#include "jumplab/grid.hpp"
#include "jumplab/jump_measure.hpp"
#include "jumplab/quadrature.hpp"
#include "jumplab/rate_field.hpp"

using namespace jumplab;

TEST_CASE("grid construction") {
    const Grid g = build_grid(3);
    CHECK(g.h == doctest::Approx(0.25).epsilon(1e-15));
    REQUIRE(g.nodes.size() == 3);
    CHECK(g.nodes[0] == doctest::Approx(0.25));
    CHECK(g.nodes[1] == doctest::Approx(0.5));
    CHECK(g.nodes[2] == doctest::Approx(0.75));
    CHECK(g.x(0) == 0.0);
    CHECK(g.x(4) == 1.0);

    CHECK(build_grid(999).h == doctest::Approx(0.001).epsilon(1e-14));
    CHECK_THROWS_AS(build_grid(1), InvalidArgument);
    CHECK_THROWS_AS(build_grid(2), InvalidArgument);
}

TEST_CASE("grid invariants over sizes") {
    for (int n : {3, 10, 501, 2000}) {
        const Grid g = build_grid(n);
        CHECK(std::abs(g.h * (n + 1) - 1.0) <= 1e-15);
        for (size_t i = 0; i < g.nodes.size(); ++i) {
            CHECK(g.nodes[i] > 0.0);
            CHECK(g.nodes[i] < 1.0);
            if (i > 0) CHECK(g.nodes[i] > g.nodes[i - 1]);
        }
    }
}

TEST_CASE("constant rate preset") {
    const Grid g = build_grid(63);
    const RateField f = build_rate_field(RatePreset::constant(), g);
    CHECK(f.min_v == 1.0);
    CHECK(f.max_v == 1.0);
    for (double v : f.values) CHECK(v == 1.0);
    CHECK(f.d1_left == 0.0);
    CHECK(f.d2_right == 0.0);
}

TEST_CASE("linear rate preset") {
    const Grid g = build_grid(200);
    const RateField f = build_rate_field(RatePreset::linear(0.5), g);
    CHECK(f.v_left == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(f.v_right == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(f.d1_left == doctest::Approx(0.5));
    CHECK(f.min_v == doctest::Approx(0.75));
    CHECK(f.max_v == doctest::Approx(1.25));
    // the linear term integrates to zero by symmetry
    double trapz = 0.5 * (f.v_left + f.v_right);
    for (double v : f.values) trapz += v;
    trapz *= g.h;
    CHECK(trapz == doctest::Approx(1.0).epsilon(1e-13));

    CHECK_THROWS_AS(RatePreset::linear(2.0), InvalidRate);
    CHECK_THROWS_AS(RatePreset::linear(-2.5), InvalidRate);
}

TEST_CASE("degenerate rate preset") {
    const Grid g = build_grid(101);
    const RateField f = build_rate_field(RatePreset::degenerate(), g);
    CHECK(f.degenerate_ok);
    CHECK(f.v_left == 0.0);
    CHECK(f.v_right == 0.0);
    CHECK(f.min_v == 0.0);
    CHECK(f.max_v == doctest::Approx(1.5).epsilon(1e-15));
    for (int i = 1; i <= g.n_interior; ++i) {
        const double x = g.nodes[static_cast<size_t>(i) - 1];
        CHECK(f.value(i) == doctest::Approx(6.0 * x * (1.0 - x)).epsilon(1e-14));
    }
    CHECK(f.d1_left == doctest::Approx(6.0));
    CHECK(f.d1_right == doctest::Approx(-6.0));
}

TEST_CASE("polynomial rate preset normalizes and validates") {
    const Grid g = build_grid(100);
    // V proportional to x: normalized to 2x, vanishing at 0 -> invalid
    CHECK_THROWS_AS(build_rate_field(RatePreset::polynomial({0.0, 1.0}), g), InvalidRate);
    // strictly positive quadratic
    const RateField f = build_rate_field(RatePreset::polynomial({1.0, 0.0, 1.0}), g);
    // raw integral 4/3, so V(x) = (1 + x^2) * 3/4
    CHECK(f.v_left == doctest::Approx(0.75));
    CHECK(f.v_right == doctest::Approx(1.5));
    // sign change inside -> invalid
    CHECK_THROWS_AS(build_rate_field(RatePreset::polynomial({1.0, -1.8}), g), InvalidRate);
}

TEST_CASE("jump presets: uniform, poly, atom") {
    const Grid g = build_grid(63);
    const JumpMeasure uni = build_jump_measure(JumpPreset::uniform(), g);
    CHECK(uni.k_vanish == 0);
    CHECK_FALSE(uni.pure_atom);
    CHECK(uni.density_left == 1.0);
    CHECK(uni.density_right == 1.0);
    for (double d : uni.density) CHECK(d == 1.0);
    CHECK(uni.total_mass() == doctest::Approx(1.0).epsilon(1e-12));

    const JumpMeasure p1 = build_jump_measure(JumpPreset::poly(1), g);
    CHECK(p1.k_vanish == 1);
    CHECK(p1.deriv_left(0) == 0.0);
    CHECK(p1.deriv_left(1) == doctest::Approx(6.0));
    CHECK(p1.deriv_right(1) == doctest::Approx(-6.0));
    for (int i = 1; i <= g.n_interior; ++i) {
        const double x = g.nodes[static_cast<size_t>(i) - 1];
        CHECK(p1.density[static_cast<size_t>(i) - 1] ==
              doctest::Approx(6.0 * x * (1.0 - x)).epsilon(1e-13));
    }

    const JumpMeasure p2 = build_jump_measure(JumpPreset::poly(2), g);
    CHECK(p2.k_vanish == 2);
    CHECK(p2.deriv_left(0) == 0.0);
    CHECK(p2.deriv_left(1) == 0.0);
    CHECK(p2.deriv_left(2) == doctest::Approx(60.0));
    CHECK(p2.deriv_right(2) == doctest::Approx(60.0));

    const JumpMeasure p3 = build_jump_measure(JumpPreset::poly(3), g);
    CHECK(p3.deriv_left(3) == doctest::Approx(840.0));
    CHECK(p3.deriv_right(3) == doctest::Approx(-840.0));

    const JumpMeasure atom = build_jump_measure(JumpPreset::atom(0.5), g);
    CHECK(atom.pure_atom);
    REQUIRE(atom.atoms.size() == 1);
    CHECK(atom.atoms[0].location == 0.5);
    CHECK(atom.atoms[0].mass == 1.0);

    CHECK_THROWS_AS(JumpPreset::atom(1.5), InvalidMeasure);
    CHECK_THROWS_AS(JumpPreset::atom(0.0), InvalidMeasure);
    CHECK_THROWS_AS(JumpPreset::atom(1.0), InvalidMeasure);
}

TEST_CASE("poly presets have exactly vanishing low-order derivatives") {
    const Grid g = build_grid(33);
    for (int k : {1, 2, 3, 4}) {
        const JumpMeasure m = build_jump_measure(JumpPreset::poly(k), g);
        CHECK(m.k_vanish == k);
        for (int j = 0; j < k; ++j) {
            CHECK(m.deriv_left(j) == 0.0);
            CHECK(m.deriv_right(j) == 0.0);
        }
        CHECK(m.deriv_left(k) != 0.0);
    }
}

TEST_CASE("mixtures") {
    const Grid g = build_grid(63);
    const JumpPreset mix = JumpPreset::mixture({{JumpPreset::uniform(), 0.5},
                                                {JumpPreset::atom(0.3), 0.5}});
    const JumpMeasure m = build_jump_measure(mix, g);
    CHECK(m.density_mass == doctest::Approx(0.5));
    CHECK(m.atom_mass() == doctest::Approx(0.5));
    CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.k_vanish == 0);

    const JumpPreset mix2 = JumpPreset::mixture({{JumpPreset::poly(2), 0.7},
                                                 {JumpPreset::atom(0.25), 0.3}});
    CHECK(build_jump_measure(mix2, g).k_vanish == 2);

    CHECK_THROWS_AS(JumpPreset::mixture({{JumpPreset::uniform(), 0.4},
                                         {JumpPreset::atom(0.3), 0.4}}),
                    InvalidMeasure);
    CHECK_THROWS_AS(JumpPreset::mixture({}), InvalidMeasure);
}

TEST_CASE("quadrature weights: trapezoid and atoms") {
    const Grid g = build_grid(3);  // h = 0.25
    const QuadratureRule uni = quadrature_weights(build_jump_measure(JumpPreset::uniform(), g), g);
    REQUIRE(uni.weights.size() == 5);
    CHECK(uni.weights[1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(uni.weights[2] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(uni.weights[3] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(uni.total() == doctest::Approx(1.0).epsilon(1e-14));

    const QuadratureRule at = quadrature_weights(build_jump_measure(JumpPreset::atom(0.5), g), g);
    CHECK(at.weights[2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(at.total() == doctest::Approx(1.0).epsilon(1e-14));

    // atom at 0.5 + h/4 splits 3:1 between the neighbors
    const QuadratureRule off =
        quadrature_weights(build_jump_measure(JumpPreset::atom(0.5625), g), g);
    CHECK(off.weights[2] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(off.weights[3] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("quadrature weights sum to the total mass for every preset") {
    for (int n : {50, 63, 501}) {
        const Grid g = build_grid(n);
        const JumpPreset presets[] = {
            JumpPreset::uniform(), JumpPreset::poly(1), JumpPreset::poly(2),
            JumpPreset::poly(3), JumpPreset::atom(0.37),
            JumpPreset::mixture({{JumpPreset::poly(1), 0.6}, {JumpPreset::atom(0.71), 0.4}})};
        for (const auto& p : presets) {
            const QuadratureRule rule = quadrature_weights(build_jump_measure(p, g), g);
            CHECK(std::abs(rule.total() - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("symmetric presets are symmetric node-for-node") {
    const Grid g = build_grid(200);  // even count: no center node
    const Grid g2 = build_grid(201);
    for (const Grid* grid : {&g, &g2}) {
        const int n = grid->n_interior;
        const RateField deg = build_rate_field(RatePreset::degenerate(), *grid);
        const JumpMeasure p2 = build_jump_measure(JumpPreset::poly(2), *grid);
        for (int i = 1; i <= n; ++i) {
            CHECK(deg.values[static_cast<size_t>(i) - 1] ==
                  deg.values[static_cast<size_t>(n - i)]);
            CHECK(p2.density[static_cast<size_t>(i) - 1] ==
                  p2.density[static_cast<size_t>(n - i)]);
        }
    }
}

TEST_CASE("reflection round-trips and swaps endpoint data") {
    const Grid g = build_grid(100);
    const RateField lin = build_rate_field(RatePreset::linear(0.5), g);
    const RateField ref = reflect(lin);
    CHECK(ref.v_left == lin.v_right);
    CHECK(ref.v_right == lin.v_left);
    CHECK(ref.d1_left == -lin.d1_right);
    const RateField twice = reflect(ref);
    for (size_t i = 0; i < lin.values.size(); ++i) CHECK(twice.values[i] == lin.values[i]);

    const JumpMeasure atom = build_jump_measure(JumpPreset::atom(0.3), g);
    const JumpMeasure ratom = reflect(atom);
    CHECK(ratom.atoms[0].location == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("rate field interpolation") {
    const Grid g = build_grid(3);
    const RateField f = build_rate_field(RatePreset::linear(1.0), g);
    CHECK(f.value_at(0.0, g) == doctest::Approx(0.5));
    CHECK(f.value_at(1.0, g) == doctest::Approx(1.5));
    CHECK(f.value_at(0.375, g) == doctest::Approx(0.875).epsilon(1e-13));
}

TEST_CASE("tabulated rate fields use one-sided derivatives and mass check") {
    const Grid g = build_grid(400);
    std::vector<double> vals(400);
    for (int i = 1; i <= 400; ++i) {
        const double x = g.nodes[static_cast<size_t>(i) - 1];
        vals[static_cast<size_t>(i) - 1] = 1.0 + 0.5 * (x - 0.5);
    }
    const RateField f = build_rate_field_from_samples(vals, 0.75, 1.25, g);
    CHECK(f.d1_left == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(f.d1_right == doctest::Approx(0.5).epsilon(1e-8));

    for (double& v : vals) v *= 1.001;  // breaks the unit mass
    CHECK_THROWS_AS(build_rate_field_from_samples(vals, 0.75075, 1.25125, g), InvalidRate);
}
