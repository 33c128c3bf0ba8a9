#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pmstair/energy.hpp"
#include "pmstair/forcing.hpp"
#include "pmstair/grid.hpp"

namespace pmstair {

/// Uniform label lattice for the chain dynamic program, plus the refinement schedule.
struct LabelSet {
    double lo = 0.0;
    double hi = 1.0;
    int count = 64;
    int refinement_levels = 0;
    int window = 8;
    int shrink = 4;

    double spacing() const { return (hi - lo) / (count - 1); }
    /// lo + k*spacing for k = 0..count-1.
    std::vector<double> values() const;
    void validate() const;
};

struct StageEnergy {
    std::string stage;
    double energy;
};

struct SolveReport {
    PCFn minimizer;
    EnergyParts energy;
    std::vector<StageEnergy> pipeline_trace;
    int iterations = 0;
    bool converged = false;
};

struct MinimizeOptions {
    std::vector<double> L_list{1.0, 2.0, 3.0, 4.0, 6.0, 8.0};
    int label_count = 64;
    int refinement_levels = 3;
    int shrink = 4;
    int window = 8;
    double span_factor = 3.0;
    int max_sweeps = 30;
    /// Extra starting points (values on the problem grid); they compete with the
    /// built-in competitors for the initial stage.
    std::vector<std::vector<double>> warm_starts;
};

/// A minimum problem value together with its minimizer.
struct MuResult {
    double value = 0.0;
    std::variant<StepFn, PCFn> minimizer;
    int m_jumps = 0;
};

// ---- chain-level building blocks (operate on any ChainProblem) ----

/// Exact minimizer over the label lattice by forward dynamic programming, followed
/// by labels.refinement_levels windowed passes re-centred on the incumbent. When
/// an incumbent is given, the result is never worse than it.
std::vector<double> solve_chain_dp(const ChainProblem& problem, const LabelSet& labels,
                                   const std::vector<double>* incumbent = nullptr,
                                   std::vector<StageEnergy>* trace = nullptr);

struct PolishResult {
    std::vector<double> values;
    int sweeps = 0;
    bool converged = false;
};

/// Cell-by-cell descent; never increases the energy.
PolishResult polish_coordinate_descent(const ChainProblem& problem, std::vector<double> values,
                                       int max_sweeps);

/// Exhaustive search over label assignments. Ties go to the lexicographically
/// smallest value sequence.
std::pair<std::vector<double>, double> brute_force_min(const ChainProblem& problem,
                                                       std::vector<double> labels);

/// The full pipeline on an arbitrary chain problem, starting from the best of the
/// named candidates.
SolveReport minimize_chain(const ChainProblem& problem,
                           std::vector<std::pair<std::string, std::vector<double>>> candidates,
                           const MinimizeOptions& opts, double scale);

// ---- operations on the discrete functional over (0, 1) ----

/// Staircase competitor: equally spaced staircases on consecutive intervals of
/// length L_n*omega(n), pinned to f at the interval endpoints.
PCFn init_competitor(const Forcing& f, double beta, long long n, double L);

PCFn solve_chain_dp(const Forcing& f, double beta, long long n, const LabelSet& labels);
PCFn polish_coordinate_descent(const PCFn& u, const Forcing& f, double beta, long long n, int max_sweeps);
std::pair<PCFn, double> brute_force_min(const Forcing& f, double beta, long long n,
                                        const std::vector<double>& labels);
SolveReport minimize_dpmf(const Forcing& f, double beta, long long n, const MinimizeOptions& opts = {});

// ---- limit functional and the mu problems ----

/// Exact minimizer of the jump-penalized functional over step functions whose
/// jumps lie on a uniform lattice of `resolution` cells. bc = (u(a), u(b)).
MuResult potts_exact(const Forcing& f, double alpha, double beta, Interval interval, int resolution,
                     std::optional<std::pair<double, double>> bc = std::nullopt);

/// Closed-form mu* via the optimal number of equally spaced jumps.
MuResult mu_star_formula(double alpha, double beta, double L, double M);

struct MuBounds {
    double lower;
    double upper;
};
MuBounds mu_bounds(double alpha, double beta, double L, double M);

MuResult mu_numeric(double alpha, double beta, double L, double M, bool bc, int resolution);

/// Minimum of the rescaled discrete functional with datum M x on (0, L).
MuResult mu_n_numeric(double beta, double L, double M, long long n, bool bc,
                      const MinimizeOptions& opts = {});

}  // namespace pmstair
