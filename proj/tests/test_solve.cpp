#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pmstair/energy.hpp"
#include "pmstair/solve.hpp"
#include "support.hpp"

using namespace pmstair;

namespace {

Grid unit_grid(long long n) { return Grid::make(0, 1, 1.0 / static_cast<double>(n)); }

double dpmf(const PCFn& u, const Forcing& f, double beta, long long n) { return dpmf_energy(u, f, beta, n).total; }

// Exhaustive minimum written independently of the library search.
double exhaustive(const Forcing& f, double beta, long long n, const std::vector<double>& labels) {
    const std::size_t N = static_cast<std::size_t>(n);
    std::vector<std::size_t> idx(N, 0);
    double best = INFINITY;
    while (true) {
        std::vector<double> v(N);
        for (std::size_t i = 0; i < N; ++i) v[i] = labels[idx[i]];
        best = std::min(best, dpmf(PCFn(unit_grid(n), v), f, beta, n));
        std::size_t k = 0;
        while (k < N && ++idx[k] == labels.size()) idx[k++] = 0;
        if (k == N) break;
    }
    return best;
}

int count_jumps(const PCFn& u, double thr) {
    int m = 0;
    for (std::size_t z = 0; z + 1 < u.size(); ++z)
        if (std::abs(u[z + 1] - u[z]) > thr) ++m;
    return m;
}

}  // namespace

TEST_CASE("label set validation") {
    CHECK_THROWS_AS((LabelSet{1, 0}.validate()), ValidationError);
    CHECK_THROWS_AS((LabelSet{0, 1, 1}.validate()), ValidationError);
    CHECK_THROWS_AS((LabelSet{0, 1, 4, -1}.validate()), ValidationError);
    CHECK_THROWS_AS((LabelSet{0, 1, 4, 0, 0}.validate()), ValidationError);
    const auto v = LabelSet{0, 1, 5}.values();
    REQUIRE(v.size() == 5);
    CHECK(v[2] == 0.5);
    CHECK(v[4] == 1.0);
}

TEST_CASE("chain dp on a zero datum") {
    PCFn u = solve_chain_dp(Forcing::constant(0), 1.0, 8, LabelSet{-1, 1, 5, 2});
    for (std::size_t z = 0; z < u.size(); ++z) CHECK(u[z] == 0.0);
}

TEST_CASE("chain dp coarse pass equals brute force on a step datum") {
    Forcing f = Forcing::step(0, {{0.5, 1}});
    const LabelSet labels{0, 1, 5, 0};
    PCFn dp = solve_chain_dp(f, 10.0, 4, labels);
    auto [bf, e] = brute_force_min(f, 10.0, 4, labels.values());
    CHECK(dpmf(dp, f, 10.0, 4) == e);
    CHECK(e == exhaustive(f, 10.0, 4, labels.values()));
}

TEST_CASE("chain dp is translation equivariant") {
    Forcing f = Forcing::step(0.25, {{0.3, 0.5}, {0.7, -0.25}});
    Forcing g = Forcing::step(1.25, {{0.3, 0.5}, {0.7, -0.25}});
    PCFn a = solve_chain_dp(f, 3.0, 10, LabelSet{0, 1, 9, 0});
    PCFn b = solve_chain_dp(g, 3.0, 10, LabelSet{1, 2, 9, 0});
    for (std::size_t z = 0; z < a.size(); ++z) CHECK(b[z] == doctest::Approx(a[z] + 1.0).epsilon(1e-12));
}

TEST_CASE("chain dp coarse energy equals exhaustive search on random instances") {
    testsupport::Gen gen(41);
    for (int t = 0; t < 50; ++t) {
        const long long n = gen.integer(2, 6);
        const int k = gen.integer(2, 6);
        Forcing f = gen.forcing();
        const double beta = gen.uniform(0.2, 20);
        const double lo = gen.uniform(-2, 0);
        const LabelSet labels{lo, lo + gen.uniform(0.5, 3), k, 0};
        const double dp = dpmf(solve_chain_dp(f, beta, n, labels), f, beta, n);
        const double bf = brute_force_min(f, beta, n, labels.values()).second;
        CHECK(dp == bf);
        CHECK(bf == exhaustive(f, beta, n, labels.values()));
    }
}

TEST_CASE("refinement never worsens the coarse pass") {
    testsupport::Gen gen(42);
    for (int t = 0; t < 20; ++t) {
        const long long n = gen.integer(5, 60);
        Forcing f = gen.forcing();
        const double beta = gen.uniform(0.5, 10);
        const double coarse = dpmf(solve_chain_dp(f, beta, n, LabelSet{-3, 3, 16, 0}), f, beta, n);
        const double fine = dpmf(solve_chain_dp(f, beta, n, LabelSet{-3, 3, 16, 3}), f, beta, n);
        CHECK(fine <= coarse);
    }
}

TEST_CASE("brute force examples") {
    auto [u, e] = brute_force_min(Forcing::affine(1, 0), 1.0, 3, {0.4});
    for (std::size_t z = 0; z < u.size(); ++z) CHECK(u[z] == 0.4);
    auto [v, ev] = brute_force_min(Forcing::constant(0), 1.0, 2, {0, 1});
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 0.0);
    CHECK(ev == 0.0);
    Forcing f = Forcing::step(0, {{0.5, 1}});
    const double bf = brute_force_min(f, 4.0, 3, {0, 0.5, 1}).second;
    CHECK(dpmf(solve_chain_dp(f, 4.0, 3, LabelSet{0, 1, 3, 0}), f, 4.0, 3) == bf);
    CHECK_THROWS_AS(brute_force_min(f, 1.0, 12, LabelSet{0, 1, 6}.values()), BudgetError);
}

TEST_CASE("polish is a descent") {
    Forcing zero = Forcing::constant(0);
    PCFn start(unit_grid(2), {0, 1});
    PCFn p = polish_coordinate_descent(start, zero, 1.0, 2, 50);
    CHECK(dpmf(p, zero, 1.0, 2) <= 1.3047189562170501);

    PCFn flat(unit_grid(5), std::vector<double>(5, 0.0));
    PCFn q = polish_coordinate_descent(flat, zero, 1.0, 5, 10);
    for (std::size_t z = 0; z < q.size(); ++z) CHECK(q[z] == 0.0);

    testsupport::Gen gen(43);
    for (int t = 0; t < 50; ++t) {
        const long long n = gen.integer(2, 80);
        Forcing f = gen.forcing();
        const double beta = gen.uniform(0.1, 10);
        PCFn u(unit_grid(n), gen.values(static_cast<std::size_t>(n), -2, 2));
        PCFn w = polish_coordinate_descent(u, f, beta, n, gen.integer(0, 5));
        CHECK(dpmf(w, f, beta, n) <= dpmf(u, f, beta, n));
    }
}

TEST_CASE("pipeline on a constant datum") {
    const SolveReport r = minimize_dpmf(Forcing::constant(0.3), 2.0, 50);
    for (std::size_t z = 0; z < r.minimizer.size(); ++z) CHECK(r.minimizer[z] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(r.energy.total == doctest::Approx(0.0).scale(1.0).epsilon(1e-20));
}

TEST_CASE("pipeline at n = 6 is optimal over a refined label lattice") {
    Forcing f = Forcing::affine(1, 0);
    const SolveReport r = minimize_dpmf(f, 1.0, 6);
    std::vector<double> labels = LabelSet{0, 1, 8}.values();
    for (double v : r.minimizer.values()) labels.push_back(v);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    const double bf = brute_force_min(f, 1.0, 6, labels).second;
    CHECK(bf <= r.energy.total);
    CHECK(r.energy.total - bf <= 1e-9);
}

TEST_CASE("pipeline report invariants") {
    testsupport::Gen gen(44);
    for (int t = 0; t < 10; ++t) {
        const long long n = gen.integer(10, 400);
        Forcing f = gen.forcing();
        const double beta = gen.uniform(0.5, 8);
        const SolveReport r = minimize_dpmf(f, beta, n);
        REQUIRE(!r.pipeline_trace.empty());
        for (std::size_t i = 1; i < r.pipeline_trace.size(); ++i)
            CHECK(r.pipeline_trace[i].energy <= r.pipeline_trace[i - 1].energy);
        CHECK(r.pipeline_trace.back().energy == r.energy.total);
        CHECK(dpmf(r.minimizer, f, beta, n) == doctest::Approx(r.energy.total).epsilon(1e-9));
    }
}

TEST_CASE("minimum values decrease with n") {
    Forcing f = Forcing::affine(1, 0);
    const double m2 = minimize_dpmf(f, 1.0, 100).energy.total;
    const double m3 = minimize_dpmf(f, 1.0, 1000).energy.total;
    const double m4 = minimize_dpmf(f, 1.0, 10000).energy.total;
    CHECK(m3 < m2);
    CHECK(m4 < m3);
}

TEST_CASE("staircase competitor") {
    PCFn z = init_competitor(Forcing::constant(0), 1.0, 1000, 2.0);
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(z[i] == 0.0);

    const long long n = 100000;
    const ScalePair s = scales(n);
    Forcing f = Forcing::affine(1, 0);
    PCFn u = init_competitor(f, 1.0, n, 2.0);
    const int m = count_jumps(u, std::pow(std::log(static_cast<double>(n)), -4));
    REQUIRE(m > 0);
    const double step = 1.0 / m;
    CHECK(step / (2.0 * s.omega) >= 0.5);
    CHECK(step / (2.0 * s.omega) <= 2.0);
    const double ratio = dpmf(u, f, 1.0, n) / (s.omega * s.omega);
    CHECK(ratio >= 0.8);
    CHECK(ratio <= 3.0);

    PCFn v = init_competitor(Forcing::affine(1, 0.75), 1.0, n, 2.0);
    for (std::size_t i = 0; i < u.size(); i += 97) CHECK(v[i] == doctest::Approx(u[i] + 0.75).epsilon(1e-12));

    CHECK_THROWS_AS(init_competitor(f, 1.0, 1000, 1e-3), ValidationError);
}
