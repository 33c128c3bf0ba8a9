#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmstair {

/// Input that violates a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A solver was asked for more work than its configured budget allows.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Uniform grid of cells [z*delta, (z+1)*delta) covering a requested interval (a, b).
 *
 * Cells are addressed by integer index: cell i of the grid is lattice cell
 * first_index() + i, so positions are derived as a_star() + i*delta() and never
 * accumulated.
 */
class Grid {
public:
    /// Snaps a and b outward onto the delta lattice. Endpoints within 1e-9*delta
    /// of a node are treated as lying on it.
    static Grid make(double a, double b, double delta);

    /// Builds a grid from an explicit lattice description (used by rescalings that
    /// must inherit the source lattice exactly).
    static Grid from_lattice(double a, double b, double delta, std::int64_t first_index,
                             std::size_t ncells);

    double a() const { return a_; }
    double b() const { return b_; }
    double delta() const { return delta_; }
    std::int64_t first_index() const { return first_; }
    std::size_t ncells() const { return ncells_; }

    double a_star() const { return static_cast<double>(first_) * delta_; }
    double b_star() const { return static_cast<double>(first_ + static_cast<std::int64_t>(ncells_)) * delta_; }

    /// Left endpoint of local cell i.
    double node(std::size_t i) const {
        return static_cast<double>(first_ + static_cast<std::int64_t>(i)) * delta_;
    }
    double cell_mid(std::size_t i) const { return node(i) + 0.5 * delta_; }

    /// Local index of the cell containing x, clamped to the grid; x = b_star maps to
    /// the last cell.
    std::size_t locate(double x) const;

    /// True when x lies on a grid node within 1e-9*delta; writes the lattice index.
    bool node_index(double x, std::int64_t& lattice_index) const;

    /// Sub-grid of local cells [first, first+count), with (a, b) clipped to it.
    Grid sub(std::size_t first, std::size_t count) const;

private:
    Grid(double a, double b, double delta, std::int64_t first, std::size_t ncells)
        : a_(a), b_(b), delta_(delta), first_(first), ncells_(ncells) {}

    double a_;
    double b_;
    double delta_;
    std::int64_t first_;
    std::size_t ncells_;
};

/// Piecewise-constant function: one value per grid cell.
class PCFn {
public:
    PCFn(Grid grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Value at x, with u(b_star) := u(b_star - delta).
    double at(double x) const { return values_[grid_.locate(x)]; }

    PCFn restrict_cells(std::size_t first, std::size_t count) const;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// The paired scales omega(n) = (log n / n)^(1/3) and delta(n) = 1/(n omega(n)).
struct ScalePair {
    long long n;
    double omega;
    double delta_n;
};

ScalePair scales(long long n);

/// Forward difference quotients (u[z+1]-u[z])/delta on ncells-1 cells.
PCFn discrete_derivative(const PCFn& u);

/// Sum of absolute increments between consecutive cells.
double total_variation(const PCFn& u);

/// y -> (u(center + omega*y) - shift)/omega on the lattice of width delta/omega.
/// center must be a grid node of u.
PCFn blow_up(const PCFn& u, double center, double omega, double shift);

}  // namespace pmstair
