#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pmstair/forcing.hpp"
#include "support.hpp"

using namespace pmstair;

TEST_CASE("affine moments") {
    Moments m = Forcing::affine(1, 0).moments({0, 1});
    CHECK(m.m0 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.m1 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    m = Forcing::constant(0).moments({0.2, 0.7});
    CHECK(m.m0 == 0.0);
    CHECK(m.m1 == 0.0);
}

TEST_CASE("step moments") {
    Forcing f = Forcing::step(0, {{0.5, 1}});
    Moments m = f.moments({0, 1});
    CHECK(m.m0 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.m1 == doctest::Approx(0.5).epsilon(1e-15));
    CellStats c = f.cell_stats({0.25, 0.75});
    CHECK(c.mean == doctest::Approx(0.5));
    CHECK(c.var == doctest::Approx(0.125));
}

TEST_CASE("step values are right-continuous") {
    Forcing f = Forcing::step(1, {{0.3, 2}, {0.6, -1}});
    CHECK(f.value(0.29) == 1.0);
    CHECK(f.value(0.3) == 3.0);
    CHECK(f.value_left(0.3) == 1.0);
    CHECK(f.value(0.6) == 2.0);
    CHECK(f.value(0.99) == 2.0);
    CHECK(f.total_variation({0, 1}) == 3.0);
    CHECK(f.total_variation({0.3, 1}) == 1.0);  // jump at the open end is excluded
}

TEST_CASE("forcing validation") {
    CHECK_THROWS_AS(Forcing::step(0, {{0.5, 0}}), ValidationError);
    CHECK_THROWS_AS(Forcing::step(0, {{0.5, 1}, {0.4, 1}}), ValidationError);
    CHECK_THROWS_AS(Forcing::step(0, {{1.0, 1}}), ValidationError);
    CHECK_THROWS_AS(Forcing::builtin("sin", 1), ValidationError);
    CHECK_THROWS_AS(Forcing::builtin("cosh"), ValidationError);
    CHECK_THROWS_AS(Forcing::affine(1, 0).moments({0.5, 1.5}), ValidationError);
}

TEST_CASE("smooth builtins") {
    Forcing s = Forcing::builtin("sin", 8);
    CHECK(s.value(0.25) == doctest::Approx(1.0));
    CHECK(s.derivative(0.0) == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(s.moments({0, 1}).m0 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s.moments({0, 1}).m1 == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(s.total_variation({0, 1}) == doctest::Approx(4.0).epsilon(1e-10));
    Forcing p = Forcing::builtin("poly3");
    // x^6 has degree 6 <= 2*4-1
    CHECK(p.moments({0, 1}).m1 == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
    CHECK(p.describe() == "smooth:poly3");
}

TEST_CASE("cell statistics are consistent with moments on random cells") {
    testsupport::Gen gen(21);
    for (int t = 0; t < 200; ++t) {
        Forcing f = gen.forcing();
        const double lo = gen.uniform(0, 0.9);
        const double hi = lo + gen.uniform(0.001, 1.0 - lo);
        const CellStats c = f.cell_stats({lo, hi});
        // brute midpoint oracle on a fine partition
        const int K = 20000;
        double s0 = 0, s1 = 0;
        for (int i = 0; i < K; ++i) {
            const double x = lo + (hi - lo) * (i + 0.5) / K;
            s0 += f.value(x);
            s1 += f.value(x) * f.value(x);
        }
        s0 *= (hi - lo) / K;
        s1 *= (hi - lo) / K;
        CHECK(c.len * c.mean == doctest::Approx(s0).epsilon(1e-3).scale(1.0));
        CHECK(c.var + c.len * c.mean * c.mean == doctest::Approx(s1).epsilon(1e-3).scale(1.0));
        CHECK(c.var >= 0.0);
        const double probe = gen.uniform(-2, 2);
        CHECK(f.misfit(probe, {lo, hi}) == doctest::Approx(c.len * (probe - c.mean) * (probe - c.mean) + c.var));
    }
}

TEST_CASE("describe round-trips through the textual form") {
    CHECK(Forcing::affine(1, 0).describe() == "affine:1,0");
    CHECK(Forcing::step(0, {{0.5, 1}}).describe() == "step:0;0.5,1");
}

TEST_CASE("step functions") {
    StepFn u(0.0, {{0.5, 1.0}}, {0, 1});
    CHECK(u.value(0.5) == 1.0);
    CHECK(u.value_left(0.5) == 0.0);
    CHECK(u.jump_count({0, 1}) == 1);
    CHECK(u.jump_count({0.5, 1}) == 0);
    CHECK(u.jump_count({0, 0.5}) == 0);
    CHECK_THROWS_AS(StepFn(0.0, {{0.5, 0.0}}, {0, 1}), ValidationError);
    CHECK_THROWS_AS(StepFn(0.0, {{1.0, 1.0}}, {0, 1}), ValidationError);
}
