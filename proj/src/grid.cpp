#include "pmstair/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pmstair {

namespace {

constexpr double kNodeTol = 1e-9;
constexpr double kMaxCells = 1e9;

// floor/ceil of x/delta that treat near-nodes as nodes.
std::int64_t snapped_floor(double x, double delta) {
    const double q = x / delta;
    const double r = std::round(q);
    if (std::abs(q - r) <= kNodeTol) return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(std::floor(q));
}

std::int64_t snapped_ceil(double x, double delta) {
    const double q = x / delta;
    const double r = std::round(q);
    if (std::abs(q - r) <= kNodeTol) return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(std::ceil(q));
}

}  // namespace

Grid Grid::make(double a, double b, double delta) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(delta))
        throw ValidationError("grid: non-finite input");
    if (!(delta > 0.0)) throw ValidationError("grid: delta must be positive");
    if (!(a < b)) throw ValidationError("grid: requires a < b");
    if ((b - a) / delta > kMaxCells) throw ValidationError("grid: cell count overflow");
    const std::int64_t lo = snapped_floor(a, delta);
    const std::int64_t hi = snapped_ceil(b, delta);
    return Grid(a, b, delta, lo, static_cast<std::size_t>(hi - lo));
}

Grid Grid::from_lattice(double a, double b, double delta, std::int64_t first_index,
                        std::size_t ncells) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(delta > 0.0) || !std::isfinite(delta))
        throw ValidationError("grid: non-finite input");
    if (!(a < b)) throw ValidationError("grid: requires a < b");
    if (ncells == 0) throw ValidationError("grid: empty lattice");
    return Grid(a, b, delta, first_index, ncells);
}

std::size_t Grid::locate(double x) const {
    const double q = (x - a_star()) / delta_;
    if (!(q > 0.0)) return 0;
    const double r = std::round(q);
    const double idx = std::abs(q - r) <= kNodeTol ? r : std::floor(q);
    if (idx >= static_cast<double>(ncells_)) return ncells_ - 1;
    return static_cast<std::size_t>(idx);
}

bool Grid::node_index(double x, std::int64_t& lattice_index) const {
    const double q = x / delta_;
    const double r = std::round(q);
    if (std::abs(q - r) > kNodeTol) return false;
    lattice_index = static_cast<std::int64_t>(r);
    return true;
}

Grid Grid::sub(std::size_t first, std::size_t count) const {
    if (count == 0 || first + count > ncells_) throw ValidationError("grid: sub-range out of bounds");
    const std::int64_t f = first_ + static_cast<std::int64_t>(first);
    const double lo = std::max(a_, static_cast<double>(f) * delta_);
    const double hi = std::min(b_, static_cast<double>(f + static_cast<std::int64_t>(count)) * delta_);
    if (!(lo < hi)) throw ValidationError("grid: sub-range misses (a, b)");
    return Grid(lo, hi, delta_, f, count);
}

PCFn::PCFn(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.ncells())
        throw ValidationError("pcfn: value count " + std::to_string(values_.size()) +
                              " does not match grid cell count " + std::to_string(grid_.ncells()));
    for (double v : values_)
        if (!std::isfinite(v)) throw ValidationError("pcfn: non-finite value");
}

PCFn PCFn::restrict_cells(std::size_t first, std::size_t count) const {
    Grid g = grid_.sub(first, count);
    return PCFn(g, std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                                       values_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

ScalePair scales(long long n) {
    if (n < 2) throw ValidationError("scales: n must be >= 2");
    const double nd = static_cast<double>(n);
    const double omega = std::cbrt(std::log(nd) / nd);
    return {n, omega, 1.0 / (nd * omega)};
}

PCFn discrete_derivative(const PCFn& u) {
    const Grid& g = u.grid();
    if (g.ncells() < 2) throw ValidationError("discrete_derivative: needs at least two cells");
    std::vector<double> d(g.ncells() - 1);
    for (std::size_t z = 0; z + 1 < g.ncells(); ++z) d[z] = (u[z + 1] - u[z]) / g.delta();
    // D^delta u lives on [a_star, b_star - delta]
    Grid dg = Grid::from_lattice(g.a_star(), g.b_star() - g.delta(), g.delta(), g.first_index(),
                                 g.ncells() - 1);
    return PCFn(dg, std::move(d));
}

double total_variation(const PCFn& u) {
    double tv = 0.0;
    for (std::size_t z = 0; z + 1 < u.size(); ++z) tv += std::abs(u[z + 1] - u[z]);
    return tv;
}

PCFn blow_up(const PCFn& u, double center, double omega, double shift) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("blow_up: omega must be positive");
    const Grid& g = u.grid();
    std::int64_t c = 0;
    if (!g.node_index(center, c)) throw ValidationError("blow_up: center is not a grid node");
    const double lo = (g.a() - center) / omega;
    const double hi = (g.b() - center) / omega;
    if (!(lo < hi)) throw ValidationError("blow_up: empty result domain");
    Grid bg = Grid::from_lattice(lo, hi, g.delta() / omega, g.first_index() - c, g.ncells());
    std::vector<double> v(u.size());
    for (std::size_t z = 0; z < u.size(); ++z) v[z] = (u[z] - shift) / omega;
    return PCFn(bg, std::move(v));
}

}  // namespace pmstair
