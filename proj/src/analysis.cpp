#include "pmstair/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "pmstair/quadrature.hpp"

namespace pmstair {

namespace {

constexpr int kPhiOrder = 8;
constexpr int kRhsPanels = 256;

bool close_rel(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y)); }

// Integral over (lo, hi) split at the jumps of f, so that each panel sees a smooth integrand.
template <class F>
double integrate_pieces(const Forcing& f, F&& g, double lo, double hi) {
    std::vector<double> cuts{lo};
    for (const Jump& j : f.jumps())
        if (j.position > lo && j.position < hi) cuts.push_back(j.position);
    cuts.push_back(hi);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        const int panels = std::max(1, static_cast<int>(std::ceil(kRhsPanels * (b - a) / (hi - lo))));
        // evaluate f on the open piece so that the value matches the piece
        const double inner = 0.5 * (a + b);
        const double piece_level = f.value(inner);
        s += integrate_composite(
            [&](double x) {
                const double fx = f.is_step() ? piece_level : f.value(x);
                return g(x, fx);
            },
            a, b, kPhiOrder, panels);
    }
    return s;
}

}  // namespace

RegimeClasses classify_slopes(const PCFn& u, long long n) {
    const ScalePair s = scales(n);
    const double ln = std::log(static_cast<double>(n));
    RegimeClasses r;
    r.t_steep = 1.0 / (s.delta_n * std::pow(ln, 4));
    r.t_flat = 1.0 / ln;
    if (!(r.t_steep > r.t_flat))
        throw RegimeError("classify_slopes: thresholds inverted (t_steep <= t_flat), n is too small");
    const double d = u.grid().delta();
    if (!close_rel(d, 1.0 / static_cast<double>(n), 1e-9) && !close_rel(d, s.delta_n, 1e-9))
        throw ValidationError("classify_slopes: u is on neither the 1/n nor the delta(n) grid");
    if (u.size() < 2) return r;
    const PCFn D = discrete_derivative(u);
    for (std::size_t z = 0; z < D.size(); ++z) {
        const double a = std::abs(D[z]);
        if (a > r.t_steep) r.steep.push_back(z);
        else if (a < r.t_flat) r.flat.push_back(z);
        else r.intermediate.push_back(z);
    }
    return r;
}

StaircaseFit fit_staircase(const PCFn& w, double thr, StairMode mode) {
    if (!(thr > 0.0)) throw ValidationError("fit_staircase: threshold must be positive");
    const Grid& g = w.grid();
    const double d = g.delta();
    StaircaseFit fit;
    for (std::size_t z = 0; z + 1 < w.size();) {
        if (std::abs(w[z + 1] - w[z]) <= thr) {
            ++z;
            continue;
        }
        double h = 0.0, wsum = 0.0, pos = 0.0;
        while (z + 1 < w.size() && std::abs(w[z + 1] - w[z]) > thr) {
            const double inc = w[z + 1] - w[z];
            h += inc;
            wsum += std::abs(inc);
            pos += std::abs(inc) * g.node(z + 1);
            ++z;
        }
        fit.jumps.push_back({pos / wsum, h});
    }
    const std::size_t m = fit.jumps.size();
    if (m < 2) throw ValidationError("fit_staircase: fewer than 2 jumps detected");

    fit.H = (fit.jumps.back().position - fit.jumps.front().position) / (2.0 * static_cast<double>(m - 1));
    double hs = 0.0;
    for (const Jump& j : fit.jumps) hs += j.height;
    fit.V = hs / (2.0 * static_cast<double>(m));
    if (!(fit.H > 0.0)) throw ValidationError("fit_staircase: degenerate jump spacing");

    // jumps sit at H (2k + 1 + tau0): circular mean of the phase with period 2
    double cs = 0.0, sn = 0.0;
    for (const Jump& j : fit.jumps) {
        const double phase = std::numbers::pi * (j.position / fit.H - 1.0);
        cs += std::cos(phase);
        sn += std::sin(phase);
    }
    fit.tau0 = (cs == 0.0 && sn == 0.0) ? 0.0 : std::atan2(sn, cs) / std::numbers::pi;
    fit.tau0 = std::clamp(fit.tau0, -1.0, 1.0);

    const Staircase model{fit.H, fit.V, fit.tau0, mode};
    const double lo = fit.jumps.front().position, hi = fit.jumps.back().position;
    std::vector<std::size_t> cells;
    for (std::size_t z = 0; z < w.size(); ++z) {
        const double y = g.cell_mid(z);
        if (y < lo || y > hi) continue;
        // skip the stretch between each detected jump and the nearest model jump
        bool near = false;
        for (const Jump& j : fit.jumps) {
            const double k = std::round((j.position / fit.H - 1.0 - fit.tau0) / 2.0);
            const double mj = fit.H * (2.0 * k + 1.0 + fit.tau0);
            if (y > std::min(j.position, mj) - 1.5 * d && y < std::max(j.position, mj) + 1.5 * d) near = true;
        }
        if (!near) cells.push_back(z);
    }
    // Horizontal translations with tau0 and tau0 -/+ 2 differ by 2V; take the
    // vertical alignment closest to the data.
    double offset = 0.0;
    if (mode == StairMode::horizontal && fit.V != 0.0 && !cells.empty()) {
        double mean = 0.0;
        for (std::size_t z : cells) mean += w[z] - staircase_eval(model, g.cell_mid(z));
        mean /= static_cast<double>(cells.size());
        offset = 2.0 * fit.V * std::round(mean / (2.0 * fit.V));
    }
    for (std::size_t z : cells)
        fit.residual = std::max(fit.residual, std::abs(w[z] - staircase_eval(model, g.cell_mid(z)) - offset));
    return fit;
}

std::vector<StrictRow> strict_convergence_report(const std::vector<std::pair<long long, PCFn>>& minimizers,
                                                 const Forcing& f, double tv_slack) {
    std::vector<StrictRow> rows;
    const double tv_f = f.total_variation({0.0, 1.0});
    for (const auto& [n, u] : minimizers) {
        const Grid& g = u.grid();
        double l1 = 0.0;
        for (std::size_t z = 0; z < u.size(); ++z) {
            const double lo = std::max(0.0, g.node(z)), hi = std::min(1.0, g.node(z) + g.delta());
            if (hi > lo) l1 += f.abs_misfit(u[z], {lo, hi});
        }
        const double tv = total_variation(u);
        rows.push_back({n, l1, tv, tv_f, tv <= tv_f + tv_slack});
    }
    return rows;
}

const std::vector<NamedTestFn>& phi_battery() {
    static const std::vector<NamedTestFn> battery{
        {"one", [](double, double, double) { return 1.0; }},
        {"cos", [](double, double, double t) { return std::cos(t); }},
        {"sin", [](double, double, double t) { return std::sin(t); }},
        {"xs", [](double x, double s, double) { return x * s; }},
    };
    return battery;
}

double varifold_lhs(const PCFn& u, const TestFn& phi) {
    const Grid& g = u.grid();
    const GaussRule& r = gauss_legendre(kPhiOrder);
    const double d = g.delta();
    const std::size_t N = u.size();
    double total = 0.0;
    for (std::size_t z = 0; z < N; ++z) {
        const double x0 = g.node(z);
        const double v0 = u[z];
        const double v1 = z + 1 < N ? u[z + 1] : u[N - 1];
        const double slope = (v1 - v0) / d;
        const double theta = std::atan(slope);
        const double len = std::hypot(1.0, slope);
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            const double t = 0.5 * (r.nodes[i] + 1.0);  // in [0, 1]
            s += r.weights[i] * phi(x0 + t * d, v0 + t * (v1 - v0), theta);
        }
        total += s * 0.5 * d * len;
    }
    return total;
}

VarifoldRHS varifold_rhs(const Forcing& f, const TestFn& phi) {
    using std::numbers::pi;
    VarifoldRHS r;
    const Interval& dom = f.domain();
    if (dom.lo > 0.0 || dom.hi < 1.0) throw ValidationError("varifold_rhs: forcing must be defined on (0, 1)");
    r.ac_term = integrate_pieces(f, [&](double x, double fx) { return phi(x, fx, 0.0); }, 0.0, 1.0);
    if (!f.is_step()) {
        r.diffuse_plus = integrate_pieces(
            f, [&](double x, double fx) { return phi(x, fx, pi / 2) * std::max(0.0, f.derivative(x)); }, 0.0, 1.0);
        r.diffuse_minus = integrate_pieces(
            f, [&](double x, double fx) { return phi(x, fx, -pi / 2) * std::max(0.0, -f.derivative(x)); }, 0.0,
            1.0);
    }
    for (const Jump& j : f.jumps()) {
        if (!(j.position > 0.0 && j.position < 1.0)) continue;
        const double lo = f.value_left(j.position), hi = f.value(j.position);
        const double a = std::min(lo, hi), b = std::max(lo, hi);
        const double angle = j.height > 0.0 ? pi / 2 : -pi / 2;
        const double v =
            integrate_composite([&](double s) { return phi(j.position, s, angle); }, a, b, kPhiOrder, 16);
        (j.height > 0.0 ? r.jump_plus : r.jump_minus) += v;
    }
    r.total = r.ac_term + r.diffuse_plus + r.diffuse_minus + r.jump_plus + r.jump_minus;
    return r;
}

double scaling_limit(const Forcing& f, double beta) {
    const double b3 = std::cbrt(beta);
    if (auto a = f.as_affine()) return b3 * std::pow(std::abs(a->slope), 2.0 / 3.0);
    if (f.is_step()) return 0.0;
    return b3 * integrate_composite([&](double x) { return std::pow(std::abs(f.derivative(x)), 2.0 / 3.0); }, 0.0,
                                    1.0, kPhiOrder, 1024);
}

std::vector<ScalingRow> scaling_experiment(const Forcing& f, double beta, const std::vector<long long>& n_list,
                                           const MinimizeOptions& opts, int threads,
                                           std::vector<SolveReport>* reports) {
    const std::size_t K = n_list.size();
    std::vector<std::optional<SolveReport>> out(K);
    std::vector<std::exception_ptr> errs(K);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < K;) {
            try {
                out[i] = minimize_dpmf(f, beta, n_list[i], opts);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    const int T = std::max(1, std::min<int>(threads, static_cast<int>(K)));
    if (T == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);

    const double limit = scaling_limit(f, beta);
    std::vector<ScalingRow> rows;
    for (std::size_t i = 0; i < K; ++i) {
        const ScalePair s = scales(n_list[i]);
        const double m = out[i]->energy.total;
        rows.push_back({n_list[i], s.omega, m, m / (s.omega * s.omega), limit});
        if (reports) reports->push_back(std::move(*out[i]));
    }
    return rows;
}

BlowupResult blowup_from_minimizer(SolveReport report, const Forcing& f, double beta, long long n, double center,
                                   BlowupVariant variant) {
    const ScalePair s = scales(n);
    const PCFn& u = report.minimizer;
    std::int64_t k;
    if (!u.grid().node_index(center, k) || center <= 0.0 || center >= 1.0)
        throw ValidationError("blowup: center must be an interior node of the 1/n grid");
    const double shift = variant == BlowupVariant::w ? f.value(center) : u.at(center);
    PCFn w = blow_up(u, center, s.omega, shift);

    const HVParams hv = hv_params(beta, f.derivative(center), 4.0 / 3.0);
    const double window = 0.8 * std::min(center, 1.0 - center) / s.omega;
    std::size_t first = w.size(), last = 0;
    for (std::size_t z = 0; z < w.size(); ++z)
        if (std::abs(w.grid().cell_mid(z)) <= window) {
            first = std::min(first, z);
            last = z;
        }
    std::optional<StaircaseFit> fit;
    if (first <= last) {
        const double thr = hv.H ? std::abs(hv.V) / 2.0 : 1.0 / std::pow(std::log(static_cast<double>(n)), 4);
        try {
            fit = fit_staircase(w.restrict_cells(first, last - first + 1), thr,
                                variant == BlowupVariant::w ? StairMode::oblique : StairMode::horizontal);
        } catch (const ValidationError&) {
            fit.reset();
        }
    }
    return BlowupResult{std::move(w), std::move(fit), hv.H, hv.V, window, std::move(report)};
}

BlowupResult blowup_experiment(const Forcing& f, double beta, long long n, double center, BlowupVariant variant,
                               const MinimizeOptions& opts) {
    std::int64_t k;
    const Grid g = Grid::make(0.0, 1.0, 1.0 / static_cast<double>(n));
    if (!g.node_index(center, k)) throw ValidationError("blowup: center is off the 1/n lattice");
    return blowup_from_minimizer(minimize_dpmf(f, beta, n, opts), f, beta, n, center, variant);
}

}  // namespace pmstair
