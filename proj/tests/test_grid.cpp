#include <doctest.h>

#include <cmath>

#include "pmstair/grid.hpp"
#include "support.hpp"

using namespace pmstair;

TEST_CASE("make snaps endpoints outward") {
    Grid g = Grid::make(0.0, 1.0, 0.5);
    CHECK(g.a_star() == 0.0);
    CHECK(g.b_star() == 1.0);
    CHECK(g.ncells() == 2);

    g = Grid::make(0.1, 0.9, 0.25);
    CHECK(g.a_star() == 0.0);
    CHECK(g.b_star() == 1.0);
    CHECK(g.ncells() == 4);

    g = Grid::make(-0.3, 0.3, 0.25);
    CHECK(g.a_star() == -0.5);
    CHECK(g.b_star() == 0.5);
    CHECK(g.ncells() == 4);
}

TEST_CASE("make treats decimal inputs near a node as on it") {
    Grid g = Grid::make(0.3, 0.7, 0.1);
    CHECK(g.first_index() == 3);
    CHECK(g.ncells() == 4);
}

TEST_CASE("make rejects bad input") {
    CHECK_THROWS_AS(Grid::make(1.0, 0.0, 0.1), ValidationError);
    CHECK_THROWS_AS(Grid::make(0.0, 1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(Grid::make(0.0, NAN, 0.1), ValidationError);
}

TEST_CASE("grid invariants over random intervals") {
    testsupport::Gen gen(11);
    for (int t = 0; t < 200; ++t) {
        const double a = gen.uniform(-5.0, 5.0);
        const double b = a + gen.uniform(0.01, 4.0);
        const double d = gen.uniform(0.001, 0.5);
        Grid g = Grid::make(a, b, d);
        CHECK(g.a_star() <= a);
        CHECK(g.b_star() >= b);
        CHECK(std::abs((g.b_star() - g.a_star()) - g.ncells() * d) <= 1e-12 * g.ncells() * d + 1e-15);
        CHECK(static_cast<long long>(g.ncells()) ==
              static_cast<long long>(std::ceil(b / d) - std::floor(a / d)));
        // idempotent on snapped endpoints
        Grid h = Grid::make(g.a_star(), g.b_star(), d);
        CHECK(h.first_index() == g.first_index());
        CHECK(h.ncells() == g.ncells());
    }
}

TEST_CASE("scales") {
    ScalePair s = scales(1000);
    // frozen from an independent double-precision evaluation of (ln n / n)^(1/3)
    CHECK(s.omega == doctest::Approx(0.19044912476405548).epsilon(1e-13));
    CHECK(s.delta_n == doctest::Approx(0.005250746104708461).epsilon(1e-13));
    // quoted 6-digit reference values agree to 5e-4
    CHECK(s.omega == doctest::Approx(0.190486).epsilon(5e-4));
    CHECK(s.delta_n == doctest::Approx(5.24973e-3).epsilon(5e-4));
    s = scales(100000);
    CHECK(s.omega == doctest::Approx(0.04864765356593078).epsilon(1e-13));
    CHECK(s.delta_n == doctest::Approx(0.00020555976017316613).epsilon(1e-13));
    CHECK(s.omega == doctest::Approx(0.0486618).epsilon(5e-4));
    CHECK(s.delta_n == doctest::Approx(2.05500e-4).epsilon(5e-4));
    double prev = scales(3).omega;
    for (long long n : {10LL, 100LL, 1000LL, 10000LL, 100000LL, 1000000LL}) {
        const ScalePair p = scales(n);
        CHECK(std::abs(p.omega * p.omega * p.omega * n - std::log(static_cast<double>(n))) <= 1e-12 * std::log(n));
        CHECK(std::abs(n * p.omega * p.delta_n - 1.0) <= 1e-12);
        CHECK(p.omega < prev);
        prev = p.omega;
    }
    CHECK_THROWS_AS(scales(1), ValidationError);
}

TEST_CASE("discrete derivative") {
    CHECK(discrete_derivative(PCFn(Grid::make(0, 1, 0.5), {0.0, 1.0}))[0] == 2.0);
    PCFn d = discrete_derivative(PCFn(Grid::make(0, 1, 0.25), {0, 0, 1, 1}));
    REQUIRE(d.size() == 3);
    CHECK(d[0] == 0.0);
    CHECK(d[1] == 4.0);
    CHECK(d[2] == 0.0);
    PCFn c = discrete_derivative(PCFn(Grid::make(0, 1, 0.25), {3, 3, 3, 3}));
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == 0.0);
}

TEST_CASE("total variation") {
    CHECK(total_variation(PCFn(Grid::make(0, 1, 0.25), {2, 2, 2, 2})) == 0.0);
    CHECK(total_variation(PCFn(Grid::make(0, 3, 1), {0, 1, 0})) == 2.0);
    CHECK(total_variation(PCFn(Grid::make(0, 4, 1), {0, 1, 3, 2})) == 4.0);
}

TEST_CASE("total variation equals the summed derivative mass") {
    testsupport::Gen gen(12);
    for (int t = 0; t < 50; ++t) {
        const std::size_t k = static_cast<std::size_t>(gen.integer(2, 40));
        const double d = 1.0 / static_cast<double>(k);
        PCFn u(Grid::make(0, 1, d), gen.values(k, -3, 3));
        const PCFn du = discrete_derivative(u);
        double mass = 0.0;
        for (std::size_t i = 0; i < du.size(); ++i) mass += std::abs(du[i]) * d;
        CHECK(mass == doctest::Approx(total_variation(u)).epsilon(1e-12));
    }
}

TEST_CASE("blow up") {
    Grid g = Grid::make(0, 1, 0.01);
    std::vector<double> v(g.ncells());
    for (std::size_t z = 0; z < v.size(); ++z) v[z] = z >= 50 ? 0.2 : 0.0;
    PCFn u(g, v);
    PCFn w = blow_up(u, 0.5, 0.1, u.at(0.5 - 0.005));
    CHECK(w.grid().delta() == doctest::Approx(0.1));
    CHECK(w.at(-0.05) == 0.0);
    CHECK(w.at(0.0) == doctest::Approx(2.0));
    CHECK(w.at(0.05) == doctest::Approx(2.0));
    CHECK(w.at(-1.0) == 0.0);

    PCFn vv = blow_up(u, 0.5, 0.1, u.at(0.5));
    CHECK(vv.at(0.0) == 0.0);

    PCFn c(g, std::vector<double>(g.ncells(), 1.5));
    PCFn z = blow_up(c, 0.3, 0.2, 1.5);
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(z[i] == 0.0);

    CHECK_THROWS_AS(blow_up(u, 0.505, 0.1, 0.0), ValidationError);
}

TEST_CASE("blow up with unit scale at a_star is the identity") {
    testsupport::Gen gen(13);
    Grid g = Grid::make(0.2, 0.9, 0.05);
    PCFn u(g, gen.values(g.ncells(), -1, 1));
    PCFn w = blow_up(u, g.a_star(), 1.0, 0.0);
    REQUIRE(w.size() == u.size());
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(w[i] == u[i]);
    CHECK(w.grid().first_index() == 0);
}

TEST_CASE("pcfn validation and right endpoint convention") {
    Grid g = Grid::make(0, 1, 0.25);
    CHECK_THROWS_AS(PCFn(g, {1, 2, 3}), ValidationError);
    CHECK_THROWS_AS(PCFn(g, {1, 2, 3, INFINITY}), ValidationError);
    PCFn u(g, {1, 2, 3, 4});
    CHECK(u.at(1.0) == 4.0);
    CHECK(u.at(0.25) == 2.0);
}
