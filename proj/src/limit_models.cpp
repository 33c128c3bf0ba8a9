#include "pmstair/limit_models.hpp"

#include <algorithm>
#include <cmath>

namespace pmstair {

namespace {

double S(double x) { return 2.0 * std::floor((x + 1.0) / 2.0); }

}  // namespace

void Staircase::validate() const {
    if (!(H > 0.0) || !std::isfinite(H)) throw ValidationError("staircase: H must be positive");
    if (!std::isfinite(V)) throw ValidationError("staircase: V must be finite");
    if (!(std::abs(tau0) <= 1.0)) throw ValidationError("staircase: |tau0| must be <= 1");
}

double staircase_eval(const Staircase& s, double x) {
    if (s.V == 0.0) return 0.0;
    const double v = s.V * S((x - s.H * s.tau0) / s.H);
    return s.mode == StairMode::oblique ? v + s.V * s.tau0 : v;
}

StepFn staircase_to_stepfn(const Staircase& s, Interval iv) {
    s.validate();
    std::vector<Jump> jumps;
    if (s.V != 0.0) {
        // jumps at H tau0 + H (2k - 1)
        const double k0 = std::floor(((iv.lo - s.H * s.tau0) / s.H + 1.0) / 2.0);
        for (double k = k0;; k += 1.0) {
            const double x = s.H * s.tau0 + s.H * (2.0 * k - 1.0);
            if (x >= iv.hi) break;
            if (x > iv.lo) jumps.push_back({x, 2.0 * s.V});
        }
    }
    return StepFn(staircase_eval(s, iv.lo), std::move(jumps), iv);
}

HVParams hv_params(double beta, double M, double alpha) {
    if (!(beta > 0.0) || !(alpha > 0.0)) throw ValidationError("hv_params: alpha and beta must be positive");
    if (M == 0.0) return {std::nullopt, 0.0};
    const double H = 0.5 * std::cbrt(6.0 * alpha / (beta * M * M));
    return {H, M * H};
}

double l0_threshold(double alpha, double beta, double M) {
    if (M == 0.0) throw ValidationError("l0_threshold: M must be nonzero");
    if (!(beta > 0.0) || !(alpha > 0.0)) throw ValidationError("l0_threshold: alpha and beta must be positive");
    return 2.0 * std::cbrt(alpha / (beta * M * M));
}

LocalMinReport check_local_min_properties(const StepFn& v, double M, Interval iv, double alpha, double beta,
                                          double tol) {
    LocalMinReport r;
    std::vector<Jump> jumps;
    for (const Jump& j : v.jumps())
        if (j.position > iv.lo && j.position < iv.hi) jumps.push_back(j);
    r.jumps = static_cast<int>(jumps.size());

    // plateaus inside the interval and their crossings with M x
    std::vector<double> cuts{iv.lo};
    for (const Jump& j : jumps) cuts.push_back(j.position);
    cuts.push_back(iv.hi);
    std::vector<double> crossings;
    for (const Jump& j : jumps) crossings.push_back(j.position);
    if (M != 0.0) {
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double c = v.value(cuts[i]);
            const double x = c / M;
            if (x > cuts[i] && x < cuts[i + 1]) crossings.push_back(x);
        }
    }
    std::sort(crossings.begin(), crossings.end());
    r.crossings = static_cast<int>(crossings.size());

    if (M != 0.0) {
        const double L0 = l0_threshold(alpha, beta, M);
        double prev = iv.lo, gap = 0.0;
        for (double x : crossings) {
            gap = std::max(gap, x - prev);
            prev = x;
        }
        gap = std::max(gap, iv.hi - prev);
        r.residual1 = std::max(0.0, gap - L0);
        r.check1 = r.residual1 <= tol;
    }

    for (const Jump& j : jumps) {
        const double x = j.position;
        r.residual2 = std::max(r.residual2, std::abs(v.value(x) + v.value_left(x) - 2.0 * M * x));
        if (!(j.height * M > 0.0)) r.check2 = false;
    }
    r.check2 = r.check2 && r.residual2 <= tol;

    for (std::size_t i = 0; i + 1 < jumps.size(); ++i) {
        const double x1 = jumps[i].position, x2 = jumps[i + 1].position;
        r.residual3 = std::max(r.residual3, std::abs(v.value(x1) - M * (x1 + x2) / 2.0));
    }
    r.check3 = r.residual3 <= tol;

    for (std::size_t i = 2; i < crossings.size(); ++i) {
        const double d1 = crossings[i - 1] - crossings[i - 2], d2 = crossings[i] - crossings[i - 1];
        r.residual4 = std::max(r.residual4, std::abs(d2 - d1));
    }
    r.check4 = r.residual4 <= tol;
    return r;
}

}  // namespace pmstair
