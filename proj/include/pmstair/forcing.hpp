#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "pmstair/grid.hpp"

namespace pmstair {

struct Interval {
    double lo;
    double hi;
    double length() const { return hi - lo; }
};

struct Jump {
    double position;
    double height;
};

/// Length, mean and centered second moment of a function over one cell.
struct CellStats {
    double len;
    double mean;
    double var;  // integral of (f - mean)^2
};

/// Raw fidelity moments over a cell: m0 = int f, m1 = int f^2.
struct Moments {
    double m0;
    double m1;
};

/**
 * The datum f of the fidelity term.
 *
 * Three families are supported: affine functions M x + c, step functions with
 * finitely many jumps (right-continuous), and smooth functions given by value and
 * derivative callbacks. Cell integrals are exact for the first two and use a
 * Gauss-Legendre rule of the configured order for the third.
 */
class Forcing {
public:
    struct Affine {
        double slope;
        double intercept;
    };
    struct Step {
        double base;
        std::vector<Jump> jumps;
        std::vector<double> levels;  // levels[i] = value right of the first i jumps
    };
    struct Smooth {
        std::string name;
        std::function<double(double)> value;
        std::function<double(double)> derivative;
        int order;
    };

    static Forcing affine(double slope, double intercept, Interval domain = {0.0, 1.0});
    static Forcing step(double base, std::vector<Jump> jumps, Interval domain = {0.0, 1.0});
    static Forcing smooth(std::string name, std::function<double(double)> value,
                          std::function<double(double)> derivative, int order = 4,
                          Interval domain = {0.0, 1.0});
    /// Named smooth builtins: "sin" (sin 2 pi x) and "poly3" (x^3).
    static Forcing builtin(const std::string& name, int order = 4, Interval domain = {0.0, 1.0});
    static Forcing constant(double c, Interval domain = {0.0, 1.0}) { return affine(0.0, c, domain); }

    const Interval& domain() const { return domain_; }
    bool is_affine() const { return std::holds_alternative<Affine>(kind_); }
    bool is_step() const { return std::holds_alternative<Step>(kind_); }
    bool is_smooth() const { return std::holds_alternative<Smooth>(kind_); }
    const Affine* as_affine() const { return std::get_if<Affine>(&kind_); }
    const Step* as_step() const { return std::get_if<Step>(&kind_); }
    const Smooth* as_smooth() const { return std::get_if<Smooth>(&kind_); }

    /// Right-continuous value. Arguments outside the domain are clamped to it,
    /// which extends f by its endpoint values.
    double value(double x) const;
    /// Left limit f(x-); differs from value() only at jumps.
    double value_left(double x) const;
    /// Derivative of the absolutely continuous part (0 for step functions).
    double derivative(double x) const;
    /// Jumps strictly inside the domain (empty unless step).
    std::vector<Jump> jumps() const;

    CellStats cell_stats(Interval cell) const;
    Moments moments(Interval cell) const;
    /// int_cell (c - f)^2, evaluated without cancellation.
    double misfit(double c, Interval cell) const;
    /// int_cell |c - f|
    double abs_misfit(double c, Interval cell) const;
    /// |Df|((lo, hi)).
    double total_variation(Interval over) const;
    /// Lower and upper bounds of f on the interval (exact for affine and step,
    /// sampled for smooth).
    Interval range(Interval over) const;

    /// Human-readable spec string, also accepted by parse_forcing in the CLI.
    std::string describe() const;

private:
    Forcing(std::variant<Affine, Step, Smooth> kind, Interval domain)
        : kind_(std::move(kind)), domain_(domain) {}
    void check_cell(Interval cell) const;

    std::variant<Affine, Step, Smooth> kind_;
    Interval domain_;
};

/// Step function with finitely many jumps on an interval; right-continuous.
class StepFn {
public:
    StepFn(double base, std::vector<Jump> jumps, Interval domain);

    double base() const { return base_; }
    const std::vector<Jump>& jumps() const { return jumps_; }
    const Interval& domain() const { return domain_; }

    double value(double x) const;
    double value_left(double x) const;
    /// Number of jumps strictly inside (lo, hi).
    int jump_count(Interval open) const;

private:
    double base_;
    std::vector<Jump> jumps_;
    Interval domain_;
};

}  // namespace pmstair
