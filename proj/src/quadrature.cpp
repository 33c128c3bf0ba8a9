#include "pmstair/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace pmstair {

namespace {

// Newton iteration on P_order from the Chebyshev-like initial guess.
GaussRule build_rule(int order) {
    GaussRule r;
    r.nodes.resize(order);
    r.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
            }
            dp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= order; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
        }
        dp = order * (x * p0 - p1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[order - 1 - i] = x;
        r.weights[i] = w;
        r.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) r.nodes[order / 2] = 0.0;
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1 || order > 256) throw std::invalid_argument("gauss_legendre: order out of range");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
    return it->second;
}

}  // namespace pmstair
