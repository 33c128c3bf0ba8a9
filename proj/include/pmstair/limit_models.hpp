#pragma once

#include <optional>

#include "pmstair/forcing.hpp"

namespace pmstair {

enum class StairMode { oblique, horizontal };

/// Canonical (H, V)-staircase V*S(x/H), S(x) = 2 floor((x+1)/2), translated by tau0.
struct Staircase {
    double H = 1.0;
    double V = 1.0;
    double tau0 = 0.0;
    StairMode mode = StairMode::oblique;

    void validate() const;
};

double staircase_eval(const Staircase& s, double x);

/// The staircase restricted to an interval as a StepFn (jumps strictly inside).
StepFn staircase_to_stepfn(const Staircase& s, Interval interval);

struct HVParams {
    std::optional<double> H;  // empty when M = 0 (degenerate, staircase is 0)
    double V = 0.0;
};

/// H = (1/2)(6 alpha/(beta M^2))^(1/3), V = M H.
HVParams hv_params(double beta, double M, double alpha = 4.0 / 3.0);

/// L0 = 2 (alpha/(beta M^2))^(1/3).
double l0_threshold(double alpha, double beta, double M);

/**
 * Structural checks for a local minimizer v of the jump-penalized functional with
 * datum M x:
 *   1. every sub-interval longer than L0 holds a jump or a crossing of M x;
 *   2. every jump is symmetric about M x and has the sign of M;
 *   3. each plateau between two jumps x1 < x2 sits at M (x1 + x2)/2;
 *   4. consecutive crossings are equally spaced.
 * Jumps count as crossings.
 */
struct LocalMinReport {
    bool check1 = true, check2 = true, check3 = true, check4 = true;
    double residual1 = 0.0, residual2 = 0.0, residual3 = 0.0, residual4 = 0.0;
    int jumps = 0;
    int crossings = 0;

    bool all_pass() const { return check1 && check2 && check3 && check4; }
};

LocalMinReport check_local_min_properties(const StepFn& v, double M, Interval interval, double alpha,
                                          double beta, double tol = 1e-9);

}  // namespace pmstair
