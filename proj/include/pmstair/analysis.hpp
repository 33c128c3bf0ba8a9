#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pmstair/forcing.hpp"
#include "pmstair/grid.hpp"
#include "pmstair/limit_models.hpp"
#include "pmstair/solve.hpp"

namespace pmstair {

/// Slope thresholds are inverted (t_steep <= t_flat): n is too small for the
/// regime decomposition.
class RegimeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

struct RegimeClasses {
    std::vector<std::size_t> steep;
    std::vector<std::size_t> intermediate;
    std::vector<std::size_t> flat;
    double t_steep = 0.0;
    double t_flat = 0.0;
};

/// Classifies derivative cells by |D u| against t_steep = 1/(delta(n) log(n)^4) and
/// t_flat = 1/log n. u may live on the 1/n grid or on a delta(n) grid; the
/// derivative of a blow-up on delta(n) equals that of the source on 1/n.
RegimeClasses classify_slopes(const PCFn& u, long long n);

struct StaircaseFit {
    double H = 0.0;
    double V = 0.0;
    double tau0 = 0.0;
    double residual = 0.0;
    std::vector<Jump> jumps;  // detected jumps (location, height)
};

/// Fits a staircase to w. Increments above jump_threshold are jumps; runs of
/// consecutive detected cells merge into one. The residual is the sup distance to
/// the fitted staircase over cells between the first and last jump, skipping the
/// cells between each detected jump and the nearest jump of the fitted staircase.
StaircaseFit fit_staircase(const PCFn& w, double jump_threshold, StairMode mode = StairMode::oblique);

struct StrictRow {
    long long n;
    double l1_error;
    double tv;
    double tv_f;
    bool tv_bounded;
};

std::vector<StrictRow> strict_convergence_report(const std::vector<std::pair<long long, PCFn>>& minimizers,
                                                 const Forcing& f, double tv_slack = 1e-6);

/// phi(x, s, theta): position, value, tangent angle in [-pi/2, pi/2].
using TestFn = std::function<double(double, double, double)>;

struct NamedTestFn {
    std::string name;
    TestFn phi;
};

/// The fixed test battery: "one", "cos", "sin", "xs".
const std::vector<NamedTestFn>& phi_battery();

/// Pairing of phi with the graph of the piecewise affine interpolant through the
/// node values u(z delta) = u_z, with u at the right end equal to the last value.
double varifold_lhs(const PCFn& u, const TestFn& phi);

struct VarifoldRHS {
    double ac_term = 0.0;
    double diffuse_plus = 0.0;
    double diffuse_minus = 0.0;
    double jump_plus = 0.0;
    double jump_minus = 0.0;
    double total = 0.0;
};

VarifoldRHS varifold_rhs(const Forcing& f, const TestFn& phi);

struct ScalingRow {
    long long n;
    double omega;
    double m_n;
    double ratio;
    double limit_value;
};

/// beta^(1/3) int_0^1 |f'|^(2/3); zero for step forcings.
double scaling_limit(const Forcing& f, double beta);

/// One pipeline solve per n; rows in n_list order. Runs up to `threads` solves at once.
std::vector<ScalingRow> scaling_experiment(const Forcing& f, double beta, const std::vector<long long>& n_list,
                                           const MinimizeOptions& opts = {}, int threads = 1,
                                           std::vector<SolveReport>* reports = nullptr);

enum class BlowupVariant { w, v };

struct BlowupResult {
    PCFn blowup;
    std::optional<StaircaseFit> fit;  // empty when fewer than two jumps were found
    std::optional<double> H_pred;
    double V_pred = 0.0;
    double window = 0.0;  // fit window is |y| <= window
    SolveReport report;
};

/// Minimizes, blows up at center (a node of the 1/n grid) and fits a staircase in a
/// central window.
BlowupResult blowup_experiment(const Forcing& f, double beta, long long n, double center, BlowupVariant variant,
                               const MinimizeOptions& opts = {});

/// Same, from an existing minimizer on the 1/n grid.
BlowupResult blowup_from_minimizer(SolveReport report, const Forcing& f, double beta, long long n, double center,
                                   BlowupVariant variant);

}  // namespace pmstair
