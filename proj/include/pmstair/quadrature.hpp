#pragma once

#include <cstddef>
#include <vector>

namespace pmstair {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rule with `order` points (exact for polynomials of degree 2*order-1).
/// Rules are computed once per order and cached.
const GaussRule& gauss_legendre(int order);

/// Integral of f over [a, b] with one Gauss-Legendre panel.
template <class F>
double integrate(F&& f, double a, double b, int order) {
    const GaussRule& r = gauss_legendre(order);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

/// Composite rule: `panels` equal panels of `order` points each.
template <class F>
double integrate_composite(F&& f, double a, double b, int order, int panels) {
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) s += integrate(f, a + p * h, a + (p + 1) * h, order);
    return s;
}

}  // namespace pmstair
