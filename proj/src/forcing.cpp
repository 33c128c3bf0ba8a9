#include "pmstair/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "pmstair/quadrature.hpp"

namespace pmstair {

namespace {

constexpr double kDomainTol = 1e-12;

inline double sq(double x) { return x * x; }

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Composite panel count for smooth integrands: one panel per cell-sized piece,
// more on long intervals so that accuracy does not degrade with length.
int panels_for(double len) { return std::max(1, static_cast<int>(std::ceil(len * 64.0))); }

// int_p^q |c - (M x + b)| for an affine integrand, split at the root.
double affine_abs_misfit(double c, double M, double b, double p, double q) {
    auto g = [&](double x) { return c - (M * x + b); };
    const double gp = g(p), gq = g(q);
    if (gp * gq >= 0.0) return 0.5 * (std::abs(gp) + std::abs(gq)) * (q - p);
    const double r = p + (q - p) * gp / (gp - gq);
    return 0.5 * std::abs(gp) * (r - p) + 0.5 * std::abs(gq) * (q - r);
}

}  // namespace

Forcing Forcing::affine(double slope, double intercept, Interval domain) {
    if (!std::isfinite(slope) || !std::isfinite(intercept))
        throw ValidationError("forcing: non-finite affine coefficients");
    if (!(domain.lo < domain.hi)) throw ValidationError("forcing: empty domain");
    return Forcing(Affine{slope, intercept}, domain);
}

Forcing Forcing::step(double base, std::vector<Jump> jumps, Interval domain) {
    if (!std::isfinite(base)) throw ValidationError("forcing: non-finite step base");
    if (!(domain.lo < domain.hi)) throw ValidationError("forcing: empty domain");
    Step s{base, std::move(jumps), {}};
    s.levels.reserve(s.jumps.size() + 1);
    s.levels.push_back(base);
    for (std::size_t i = 0; i < s.jumps.size(); ++i) {
        const Jump& j = s.jumps[i];
        if (!std::isfinite(j.position) || !std::isfinite(j.height) || j.height == 0.0)
            throw ValidationError("forcing: step jumps need finite position and nonzero height");
        if (!(j.position > domain.lo && j.position < domain.hi))
            throw ValidationError("forcing: step jump outside the open domain");
        if (i > 0 && !(j.position > s.jumps[i - 1].position))
            throw ValidationError("forcing: step jump positions must increase strictly");
        s.levels.push_back(s.levels.back() + j.height);
    }
    return Forcing(std::move(s), domain);
}

Forcing Forcing::smooth(std::string name, std::function<double(double)> value,
                        std::function<double(double)> derivative, int order, Interval domain) {
    if (order < 2) throw ValidationError("forcing: smooth quadrature order must be >= 2");
    if (!value || !derivative) throw ValidationError("forcing: smooth forcing needs value and derivative");
    if (!(domain.lo < domain.hi)) throw ValidationError("forcing: empty domain");
    return Forcing(Smooth{std::move(name), std::move(value), std::move(derivative), order}, domain);
}

Forcing Forcing::builtin(const std::string& name, int order, Interval domain) {
    using std::numbers::pi;
    if (name == "sin")
        return smooth(
            name, [](double x) { return std::sin(2.0 * pi * x); },
            [](double x) { return 2.0 * pi * std::cos(2.0 * pi * x); }, order, domain);
    if (name == "poly3")
        return smooth(
            name, [](double x) { return x * x * x; }, [](double x) { return 3.0 * x * x; }, order,
            domain);
    throw ValidationError("forcing: unknown smooth builtin '" + name + "'");
}

double Forcing::value(double x) const {
    x = std::clamp(x, domain_.lo, domain_.hi);
    if (auto a = as_affine()) return a->slope * x + a->intercept;
    if (auto s = as_step()) {
        auto it = std::upper_bound(s->jumps.begin(), s->jumps.end(), x,
                                   [](double v, const Jump& j) { return v < j.position; });
        return s->levels[static_cast<std::size_t>(it - s->jumps.begin())];
    }
    return as_smooth()->value(x);
}

double Forcing::value_left(double x) const {
    if (auto s = as_step()) {
        x = std::clamp(x, domain_.lo, domain_.hi);
        auto it = std::lower_bound(s->jumps.begin(), s->jumps.end(), x,
                                   [](const Jump& j, double v) { return j.position < v; });
        return s->levels[static_cast<std::size_t>(it - s->jumps.begin())];
    }
    return value(x);
}

double Forcing::derivative(double x) const {
    if (auto a = as_affine()) return a->slope;
    if (is_step()) return 0.0;
    return as_smooth()->derivative(std::clamp(x, domain_.lo, domain_.hi));
}

std::vector<Jump> Forcing::jumps() const {
    if (auto s = as_step()) return s->jumps;
    return {};
}

void Forcing::check_cell(Interval cell) const {
    const double tol = kDomainTol * std::max(1.0, domain_.hi - domain_.lo);
    if (!(cell.lo <= cell.hi) || cell.lo < domain_.lo - tol || cell.hi > domain_.hi + tol)
        throw ValidationError("forcing: cell [" + fmt17(cell.lo) + ", " + fmt17(cell.hi) +
                              "] outside the domain");
}

CellStats Forcing::cell_stats(Interval cell) const {
    check_cell(cell);
    const double len = cell.length();
    if (len <= 0.0) return {0.0, value(cell.lo), 0.0};
    if (auto a = as_affine()) {
        const double mid = 0.5 * (cell.lo + cell.hi);
        return {len, a->slope * mid + a->intercept, sq(a->slope) * len * len * len / 12.0};
    }
    if (auto s = as_step()) {
        auto first = std::upper_bound(s->jumps.begin(), s->jumps.end(), cell.lo,
                                      [](double v, const Jump& j) { return v < j.position; });
        auto last = std::lower_bound(first, s->jumps.end(), cell.hi,
                                     [](const Jump& j, double v) { return j.position < v; });
        std::size_t k = static_cast<std::size_t>(first - s->jumps.begin());
        if (first == last) return {len, s->levels[k], 0.0};
        // piece boundaries inside the cell
        double acc = 0.0;
        double p = cell.lo;
        for (auto it = first; it != last; ++it, ++k) {
            acc += s->levels[k] * (it->position - p);
            p = it->position;
        }
        acc += s->levels[k] * (cell.hi - p);
        const double mean = acc / len;
        double var = 0.0;
        p = cell.lo;
        k = static_cast<std::size_t>(first - s->jumps.begin());
        for (auto it = first; it != last; ++it, ++k) {
            var += sq(s->levels[k] - mean) * (it->position - p);
            p = it->position;
        }
        var += sq(s->levels[k] - mean) * (cell.hi - p);
        return {len, mean, var};
    }
    const Smooth& sm = *as_smooth();
    const int panels = panels_for(len);
    const double mean = integrate_composite(sm.value, cell.lo, cell.hi, sm.order, panels) / len;
    const double var = integrate_composite([&](double x) { return sq(sm.value(x) - mean); }, cell.lo,
                                           cell.hi, sm.order, panels);
    return {len, mean, var};
}

Moments Forcing::moments(Interval cell) const {
    const CellStats c = cell_stats(cell);
    return {c.len * c.mean, c.var + c.len * c.mean * c.mean};
}

double Forcing::misfit(double c, Interval cell) const {
    if (const Smooth* sm = as_smooth()) {
        check_cell(cell);
        return integrate_composite([&](double x) { return sq(c - sm->value(x)); }, cell.lo, cell.hi,
                                   sm->order, panels_for(cell.length()));
    }
    const CellStats s = cell_stats(cell);
    return s.len * sq(c - s.mean) + s.var;
}

double Forcing::abs_misfit(double c, Interval cell) const {
    check_cell(cell);
    if (auto a = as_affine()) return affine_abs_misfit(c, a->slope, a->intercept, cell.lo, cell.hi);
    if (auto s = as_step()) {
        double acc = 0.0;
        double p = cell.lo;
        for (const Jump& j : s->jumps) {
            if (j.position <= cell.lo) continue;
            if (j.position >= cell.hi) break;
            acc += std::abs(c - value(p)) * (j.position - p);
            p = j.position;
        }
        return acc + std::abs(c - value(p)) * (cell.hi - p);
    }
    const Smooth& sm = *as_smooth();
    return integrate_composite([&](double x) { return std::abs(c - sm.value(x)); }, cell.lo, cell.hi,
                               std::max(sm.order, 8), panels_for(cell.length()));
}

double Forcing::total_variation(Interval over) const {
    if (auto a = as_affine()) return std::abs(a->slope) * over.length();
    if (auto s = as_step()) {
        double tv = 0.0;
        for (const Jump& j : s->jumps)
            if (j.position > over.lo && j.position < over.hi) tv += std::abs(j.height);
        return tv;
    }
    const Smooth& sm = *as_smooth();
    return integrate_composite([&](double x) { return std::abs(sm.derivative(x)); }, over.lo, over.hi, 8,
                               std::max(64, panels_for(over.length()) * 4));
}

Interval Forcing::range(Interval over) const {
    if (auto a = as_affine()) {
        const double p = a->slope * over.lo + a->intercept, q = a->slope * over.hi + a->intercept;
        return {std::min(p, q), std::max(p, q)};
    }
    double lo = value(over.lo), hi = lo;
    if (auto s = as_step()) {
        for (const Jump& j : s->jumps) {
            if (j.position <= over.lo || j.position >= over.hi) continue;
            const double v = value(j.position);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return {lo, hi};
    }
    constexpr int kSamples = 1024;
    for (int i = 1; i <= kSamples; ++i) {
        const double v = value(over.lo + over.length() * i / kSamples);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

std::string Forcing::describe() const {
    if (auto a = as_affine()) return "affine:" + fmt17(a->slope) + "," + fmt17(a->intercept);
    if (auto s = as_step()) {
        std::string out = "step:" + fmt17(s->base);
        for (const Jump& j : s->jumps) out += ";" + fmt17(j.position) + "," + fmt17(j.height);
        return out;
    }
    return "smooth:" + as_smooth()->name;
}

StepFn::StepFn(double base, std::vector<Jump> jumps, Interval domain)
    : base_(base), jumps_(std::move(jumps)), domain_(domain) {
    if (!(domain_.lo < domain_.hi)) throw ValidationError("stepfn: empty domain");
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
        if (jumps_[i].height == 0.0) throw ValidationError("stepfn: zero jump height");
        if (!(jumps_[i].position > domain_.lo && jumps_[i].position < domain_.hi))
            throw ValidationError("stepfn: jump outside the open domain");
        if (i > 0 && !(jumps_[i].position > jumps_[i - 1].position))
            throw ValidationError("stepfn: jump positions must increase strictly");
    }
}

double StepFn::value(double x) const {
    double v = base_;
    for (const Jump& j : jumps_) {
        if (j.position > x) break;
        v += j.height;
    }
    return v;
}

double StepFn::value_left(double x) const {
    double v = base_;
    for (const Jump& j : jumps_) {
        if (j.position >= x) break;
        v += j.height;
    }
    return v;
}

int StepFn::jump_count(Interval open) const {
    int count = 0;
    for (const Jump& j : jumps_)
        if (j.position > open.lo && j.position < open.hi) ++count;
    return count;
}

}  // namespace pmstair
