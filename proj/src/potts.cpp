#include <algorithm>
#include <cmath>
#include <limits>

#include "pmstair/solve.hpp"

namespace pmstair {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

StepFn make_step(const std::vector<double>& levels, const std::vector<double>& cuts, Interval domain) {
    std::vector<Jump> jumps;
    double cur = levels.front();
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double h = levels[i + 1] - cur;
        if (h == 0.0) continue;
        jumps.push_back({cuts[i], h});
        cur = levels[i + 1];
    }
    return StepFn(levels.front(), std::move(jumps), domain);
}

}  // namespace

MuResult potts_exact(const Forcing& f, double alpha, double beta, Interval iv, int resolution,
                     std::optional<std::pair<double, double>> bc) {
    if (!(alpha > 0.0) || !(beta >= 0.0)) throw ValidationError("potts: alpha must be positive, beta >= 0");
    if (!(iv.lo < iv.hi)) throw ValidationError("potts: empty interval");
    if (resolution < 1 || (bc && resolution < 2)) throw ValidationError("potts: resolution too small");
    const std::size_t R = static_cast<std::size_t>(resolution);

    std::vector<double> x(R + 1);
    for (std::size_t i = 0; i <= R; ++i) x[i] = iv.lo + iv.length() * static_cast<double>(i) / resolution;
    x[R] = iv.hi;

    // prefix sums of int f and int f^2, long double against cancellation in S1 - S0^2/len
    std::vector<long double> P0(R + 1, 0.0L), P1(R + 1, 0.0L);
    for (std::size_t i = 0; i < R; ++i) {
        const Moments m = f.moments({x[i], x[i + 1]});
        P0[i + 1] = P0[i] + m.m0;
        P1[i + 1] = P1[i] + m.m1;
    }
    // cost and constant of segment [x_i, x_j)
    auto segment = [&](std::size_t i, std::size_t j, double& c) -> double {
        const long double S0 = P0[j] - P0[i], S1 = P1[j] - P1[i];
        const long double len = static_cast<long double>(x[j]) - x[i];
        std::optional<double> fixed;
        if (bc && i == 0) fixed = bc->first;
        if (bc && j == R) {
            if (fixed && *fixed != bc->second) return kInf;
            fixed = bc->second;
        }
        long double cost;
        if (fixed) {
            c = *fixed;
            cost = S1 - 2.0L * c * S0 + static_cast<long double>(c) * c * len;
        } else {
            c = static_cast<double>(S0 / len);
            cost = S1 - S0 * S0 / len;
        }
        return beta * static_cast<double>(std::max(cost, 0.0L));
    };

    std::vector<double> E(R + 1, kInf), C(R + 1, 0.0);
    std::vector<std::size_t> from(R + 1, 0);
    E[0] = 0.0;
    for (std::size_t j = 1; j <= R; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (!(E[i] < kInf)) continue;
            double c = 0.0;
            const double s = segment(i, j, c);
            const double e = E[i] + (i > 0 ? alpha : 0.0) + s;
            if (e < E[j]) {
                E[j] = e;
                from[j] = i;
                C[j] = c;
            }
        }
    }

    std::vector<double> levels, cuts;
    for (std::size_t j = R; j > 0; j = from[j]) {
        levels.push_back(C[j]);
        if (from[j] > 0) cuts.push_back(x[from[j]]);
    }
    std::reverse(levels.begin(), levels.end());
    std::reverse(cuts.begin(), cuts.end());
    StepFn u = make_step(levels, cuts, iv);
    // report the value of the returned function, not the DP accumulator
    const double value = jf_energy(u, f, alpha, beta, iv).total;
    const int m = static_cast<int>(u.jumps().size());
    return MuResult{value, std::move(u), m};
}

MuResult mu_star_formula(double alpha, double beta, double L, double M) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(L > 0.0)) throw ValidationError("mu*: need alpha, beta, L > 0");
    if (M == 0.0) return MuResult{0.0, StepFn(0.0, {}, {0.0, L}), 0};
    const double c = beta * M * M * L * L * L / 12.0;
    auto g = [&](int m) { return m * alpha + c / (static_cast<double>(m) * m); };
    const int m_hi = static_cast<int>(std::ceil(std::cbrt(2.0 * c / alpha))) + 1;
    int best = 1;
    for (int m = 2; m <= m_hi; ++m)
        if (g(m) < g(best)) best = m;
    std::vector<Jump> jumps;
    for (int i = 0; i < best; ++i) jumps.push_back({(i + 0.5) * L / best, M * L / best});
    return MuResult{g(best), StepFn(0.0, std::move(jumps), {0.0, L}), best};
}

MuBounds mu_bounds(double alpha, double beta, double L, double M) {
    const double slope = 0.5 * std::cbrt(4.5 * alpha * alpha * beta * M * M) * L;
    return {slope - 2.0 * std::pow(6.0, 2.0 / 3.0) * alpha, slope + 1.5 * alpha};
}

MuResult mu_numeric(double alpha, double beta, double L, double M, bool bc, int resolution) {
    if (resolution < 4) throw ValidationError("mu: resolution must be >= 4");
    if (!(L > 0.0)) throw ValidationError("mu: L must be positive");
    std::optional<std::pair<double, double>> b;
    if (bc) b = std::make_pair(0.0, M * L);
    return potts_exact(Forcing::affine(M, 0.0, {0.0, L}), alpha, beta, {0.0, L}, resolution, b);
}

}  // namespace pmstair
