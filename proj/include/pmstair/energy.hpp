#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "pmstair/forcing.hpp"
#include "pmstair/grid.hpp"

namespace pmstair {

struct EnergyParts {
    double roughness = 0.0;
    double fidelity = 0.0;
    double total = 0.0;
};

/**
 * A discretized chain energy on a grid:
 *
 *   weight * sum_z log(1 + ((u[z+1] - u[z]) * inv_delta)^2)
 *     + beta * sum_z ( len_z (u[z] - mean_z)^2 + var_z )
 *
 * where (len_z, mean_z, var_z) are the statistics of f over cell z clipped to (a, b).
 * Both the discrete functional on the 1/n grid and its rescaled form on the delta(n)
 * grid are instances; solvers only see this representation. Optional pins fix the
 * first and last cell values.
 */
class ChainProblem {
public:
    ChainProblem(Grid grid, double weight, double inv_delta, double beta, std::vector<CellStats> cells);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return cells_.size(); }
    double weight() const { return weight_; }
    double inv_delta() const { return inv_delta_; }
    double beta() const { return beta_; }
    const CellStats& cell(std::size_t z) const { return cells_[z]; }

    std::optional<double> pin_first;
    std::optional<double> pin_last;

    double pair_cost(double diff) const {
        const double d = diff * inv_delta_;
        return weight_ * std::log1p(d * d);
    }
    double unary(std::size_t z, double t) const {
        const CellStats& c = cells_[z];
        const double e = t - c.mean;
        return beta_ * (c.len * e * e + c.var);
    }

    EnergyParts energy(std::span<const double> values) const;
    /// True when the pins (if any) hold exactly.
    bool admissible(std::span<const double> values) const;
    /// Cell means of f, the minimizer of the fidelity part alone.
    std::vector<double> cell_means() const;

private:
    Grid grid_;
    double weight_;
    double inv_delta_;
    double beta_;
    std::vector<CellStats> cells_;
};

/// Chain problem of the discrete functional on grid (1/n lattice).
ChainProblem dpmf_problem(const Grid& grid, const Forcing& f, double beta, long long n);
/// Chain problem of the rescaled functional on the delta(n) lattice of (a, b).
ChainProblem rdpmf_problem(const Forcing& f, double beta, long long n, Interval interval);

Moments fidelity_moments(const Forcing& f, Interval cell);

/// Discrete functional with fidelity over u.grid's interval; requires delta = 1/n.
EnergyParts dpmf_energy(const PCFn& u, const Forcing& f, double beta, long long n);

/// Rescaled functional on (a, b); beta may be 0 for the principal part alone.
EnergyParts rdpmf_energy(const PCFn& u, const Forcing& f, double beta, long long n, Interval interval);

/// alpha * (jumps strictly inside (a, b)) + beta * int_a^b (u - f)^2.
EnergyParts jf_energy(const StepFn& u, const Forcing& f, double alpha, double beta, Interval interval);

}  // namespace pmstair
