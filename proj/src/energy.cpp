#include "pmstair/energy.hpp"

#include <algorithm>
#include <cmath>

namespace pmstair {

namespace {

constexpr double kRelTol = 1e-12;

bool close_rel(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y)); }

void check_domain(const Forcing& f, double a, double b) {
    const Interval& d = f.domain();
    const double tol = 1e-12 * std::max(1.0, d.hi - d.lo);
    if (a < d.lo - tol || b > d.hi + tol) throw ValidationError("energy: forcing domain does not contain (a, b)");
}

std::vector<CellStats> clipped_stats(const Grid& g, const Forcing& f) {
    std::vector<CellStats> cells(g.ncells());
    for (std::size_t z = 0; z < g.ncells(); ++z) {
        const double lo = std::max(g.a(), g.node(z));
        const double hi = std::min(g.b(), g.node(z) + g.delta());
        cells[z] = hi > lo ? f.cell_stats({lo, hi}) : CellStats{0.0, f.value(lo), 0.0};
    }
    return cells;
}

}  // namespace

ChainProblem::ChainProblem(Grid grid, double weight, double inv_delta, double beta,
                           std::vector<CellStats> cells)
    : grid_(grid), weight_(weight), inv_delta_(inv_delta), beta_(beta), cells_(std::move(cells)) {
    if (cells_.size() != grid_.ncells()) throw ValidationError("chain problem: cell count mismatch");
    if (!(beta_ >= 0.0) || !std::isfinite(beta_)) throw ValidationError("chain problem: beta must be >= 0");
}

EnergyParts ChainProblem::energy(std::span<const double> values) const {
    if (values.size() != cells_.size()) throw ValidationError("energy: value count mismatch");
    EnergyParts e;
    for (std::size_t z = 0; z + 1 < values.size(); ++z) e.roughness += pair_cost(values[z + 1] - values[z]);
    for (std::size_t z = 0; z < values.size(); ++z) e.fidelity += unary(z, values[z]);
    e.total = e.roughness + e.fidelity;
    return e;
}

bool ChainProblem::admissible(std::span<const double> values) const {
    if (values.size() != cells_.size()) return false;
    if (pin_first && values.front() != *pin_first) return false;
    if (pin_last && values.back() != *pin_last) return false;
    return true;
}

std::vector<double> ChainProblem::cell_means() const {
    std::vector<double> m(cells_.size());
    for (std::size_t z = 0; z < cells_.size(); ++z) m[z] = cells_[z].mean;
    return m;
}

ChainProblem dpmf_problem(const Grid& grid, const Forcing& f, double beta, long long n) {
    if (n < 2) throw ValidationError("dpmf: n must be >= 2");
    if (!(beta > 0.0)) throw ValidationError("dpmf: beta must be positive");
    const double nd = static_cast<double>(n);
    if (!close_rel(grid.delta(), 1.0 / nd, kRelTol)) throw ValidationError("dpmf: grid width is not 1/n");
    check_domain(f, grid.a(), grid.b());
    return ChainProblem(grid, 1.0 / nd, nd, beta, clipped_stats(grid, f));
}

ChainProblem rdpmf_problem(const Forcing& f, double beta, long long n, Interval interval) {
    if (!(beta >= 0.0)) throw ValidationError("rdpmf: beta must be >= 0");
    const ScalePair s = scales(n);
    Grid g = Grid::make(interval.lo, interval.hi, s.delta_n);
    check_domain(f, interval.lo, interval.hi);
    return ChainProblem(g, s.delta_n / (s.omega * s.omega), static_cast<double>(n) * s.omega, beta,
                        clipped_stats(g, f));
}

Moments fidelity_moments(const Forcing& f, Interval cell) { return f.moments(cell); }

EnergyParts dpmf_energy(const PCFn& u, const Forcing& f, double beta, long long n) {
    return dpmf_problem(u.grid(), f, beta, n).energy(u.values());
}

EnergyParts rdpmf_energy(const PCFn& u, const Forcing& f, double beta, long long n, Interval interval) {
    ChainProblem p = rdpmf_problem(f, beta, n, interval);
    const Grid& g = u.grid();
    if (g.first_index() != p.grid().first_index() || g.ncells() != p.grid().ncells() ||
        !close_rel(g.delta(), p.grid().delta(), kRelTol))
        throw ValidationError("rdpmf: u is not on the delta(n) lattice of the interval");
    return p.energy(u.values());
}

EnergyParts jf_energy(const StepFn& u, const Forcing& f, double alpha, double beta, Interval interval) {
    if (!(alpha > 0.0) || !(beta >= 0.0)) throw ValidationError("jf: alpha must be positive, beta >= 0");
    const double tol = 1e-12 * std::max(1.0, interval.length());
    if (interval.lo < u.domain().lo - tol || interval.hi > u.domain().hi + tol)
        throw ValidationError("jf: u domain does not contain the interval");
    check_domain(f, interval.lo, interval.hi);
    EnergyParts e;
    e.roughness = alpha * u.jump_count(interval);
    double p = interval.lo;
    for (const Jump& j : u.jumps()) {
        if (j.position <= interval.lo) continue;
        if (j.position >= interval.hi) break;
        e.fidelity += f.misfit(u.value(0.5 * (p + j.position)), {p, j.position});
        p = j.position;
    }
    e.fidelity += f.misfit(u.value(0.5 * (p + interval.hi)), {p, interval.hi});
    e.fidelity *= beta;
    e.total = e.roughness + e.fidelity;
    return e;
}

}  // namespace pmstair
