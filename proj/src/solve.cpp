#include "pmstair/solve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

namespace pmstair {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxLabelCells = 5e7;
constexpr double kBruteBudget = 1e7;
constexpr std::size_t kLargeGrid = 10000;
constexpr int kLargeGridMaxLabels = 128;
constexpr std::size_t kPottsBlocks = 4096;

// Candidate values of one cell: base + (k - center) * h for k in [0, count).
struct CellLabels {
    double base;
    int center;
    int count;
};

inline double label_value(const CellLabels& c, int k, double h) { return c.base + (k - c.center) * h; }

// Forward DP over the chain; window < 0 means unrestricted transitions.
std::vector<double> run_dp(const ChainProblem& p, const std::vector<CellLabels>& cl, double h, int window) {
    const std::size_t N = p.size();
    std::vector<std::size_t> offs(N + 1, 0);
    for (std::size_t z = 0; z < N; ++z) offs[z + 1] = offs[z] + static_cast<std::size_t>(cl[z].count);
    std::vector<std::uint16_t> bp(offs[N], 0);

    std::vector<double> prev(static_cast<std::size_t>(cl[0].count)), next, table;
    for (int k = 0; k < cl[0].count; ++k) prev[k] = p.unary(0, label_value(cl[0], k, h));

    for (std::size_t z = 0; z + 1 < N; ++z) {
        const CellLabels& a = cl[z];
        const CellLabels& b = cl[z + 1];
        // e = (k - b.center) - (j - a.center) indexes the value difference.
        int e_min = -b.center - (a.count - 1 - a.center);
        int e_max = (b.count - 1 - b.center) + a.center;
        if (window >= 0) {
            e_min = std::max(e_min, -window);
            e_max = std::min(e_max, window);
        }
        const double dbase = b.base - a.base;
        table.assign(static_cast<std::size_t>(std::max(0, e_max - e_min + 1)), 0.0);
        for (int e = e_min; e <= e_max; ++e) table[e - e_min] = p.pair_cost(dbase + e * h);

        next.assign(static_cast<std::size_t>(b.count), kInf);
        std::uint16_t* bpz = bp.data() + offs[z + 1];
        for (int k = 0; k < b.count; ++k) {
            const int shift = (k - b.center) + a.center;  // e = shift - j
            int j_lo = shift - e_max, j_hi = shift - e_min;
            j_lo = std::max(j_lo, 0);
            j_hi = std::min(j_hi, a.count - 1);
            double best = kInf;
            int arg = 0;
            for (int j = j_lo; j <= j_hi; ++j) {
                const double c = prev[j] + table[shift - j - e_min];
                if (c < best) {
                    best = c;
                    arg = j;
                }
            }
            if (best < kInf) {
                next[k] = best + p.unary(z + 1, label_value(b, k, h));
                bpz[k] = static_cast<std::uint16_t>(arg);
            }
        }
        prev.swap(next);
    }

    int k = 0;
    for (int j = 1; j < cl[N - 1].count; ++j)
        if (prev[j] < prev[k]) k = j;
    std::vector<double> out(N);
    for (std::size_t z = N; z-- > 0;) {
        out[z] = label_value(cl[z], k, h);
        if (z > 0) k = bp[offs[z] + static_cast<std::size_t>(k)];
    }
    return out;
}

void check_budget(const ChainProblem& p, int count) {
    if (p.size() >= kLargeGrid && count > kLargeGridMaxLabels)
        throw BudgetError("chain dp: more than 128 coarse labels on a grid of >= 1e4 cells");
    if (static_cast<double>(count) * static_cast<double>(p.size()) > kMaxLabelCells)
        throw BudgetError("chain dp: label count times cell count exceeds the budget");
}

// Local objective of cell z with all other cells fixed (constant part of the
// misfit omitted).
struct CellObjective {
    const ChainProblem& p;
    std::size_t z;
    bool has_left, has_right;
    double left, right;

    double value(double t) const {
        double g = p.unary(z, t);
        if (has_left) g += p.pair_cost(t - left);
        if (has_right) g += p.pair_cost(right - t);
        return g;
    }
    // first and second derivative
    void derivs(double t, double& g1, double& g2) const {
        const CellStats& c = p.cell(z);
        const double s2 = p.inv_delta() * p.inv_delta();
        const double w = p.weight();
        g1 = 2.0 * p.beta() * c.len * (t - c.mean);
        g2 = 2.0 * p.beta() * c.len;
        auto add = [&](double d, double sign) {
            const double q = 1.0 + s2 * d * d;
            g1 += sign * w * 2.0 * s2 * d / q;
            g2 += w * 2.0 * s2 * (1.0 - s2 * d * d) / (q * q);
        };
        if (has_left) add(t - left, 1.0);
        if (has_right) add(right - t, -1.0);
    }
};

double newton_refine(const CellObjective& g, double t) {
    constexpr int kMaxSteps = 30;
    constexpr double kStepTol = 1e-12;
    double gt = g.value(t);
    for (int it = 0; it < kMaxSteps; ++it) {
        double g1, g2;
        g.derivs(t, g1, g2);
        if (g1 == 0.0 || !std::isfinite(g1)) break;
        double step = g2 > 0.0 ? -g1 / g2 : -std::copysign(1.0 / g.p.inv_delta(), g1);
        double gn = g.value(t + step);
        int halvings = 0;
        while (!(gn < gt) && halvings < 60) {
            step *= 0.5;
            gn = g.value(t + step);
            ++halvings;
        }
        if (!(gn < gt)) break;
        t += step;
        gt = gn;
        if (std::abs(step) <= kStepTol * std::max(1.0, std::abs(t))) break;
    }
    return t;
}

// One damped Newton step on the whole chain. The Hessian is tridiagonal; pair
// terms in their concave range contribute zero curvature so that the system stays
// positive definite. Returns false when no decrease was found.
bool chain_newton_step(const ChainProblem& p, std::vector<double>& u, double& energy) {
    const std::size_t N = u.size();
    const double w = p.weight(), s2 = p.inv_delta() * p.inv_delta();
    std::vector<double> g(N, 0.0), a(N, 0.0), b(N, 0.0);
    for (std::size_t z = 0; z < N; ++z) {
        const CellStats& c = p.cell(z);
        g[z] = 2.0 * p.beta() * c.len * (u[z] - c.mean);
        a[z] = 2.0 * p.beta() * c.len;
    }
    for (std::size_t z = 0; z + 1 < N; ++z) {
        const double d = u[z + 1] - u[z];
        const double q = 1.0 + s2 * d * d;
        const double g1 = 2.0 * w * s2 * d / q;
        const double g2 = std::max(0.0, 2.0 * w * s2 * (1.0 - s2 * d * d) / (q * q));
        g[z] -= g1;
        g[z + 1] += g1;
        a[z] += g2;
        a[z + 1] += g2;
        b[z] = -g2;
    }
    auto fix = [&](std::size_t z) {
        g[z] = 0.0;
        a[z] = 1.0;
        if (z > 0) b[z - 1] = 0.0;
        if (z + 1 < N) b[z] = 0.0;
    };
    if (p.pin_first) fix(0);
    if (p.pin_last) fix(N - 1);
    double amax = 0.0;
    for (double v : a) amax = std::max(amax, v);
    for (double& v : a) v += 1e-14 * amax + std::numeric_limits<double>::min();

    // Thomas algorithm for H x = -g
    std::vector<double> cp(N, 0.0), x(N, 0.0);
    double den = a[0];
    cp[0] = N > 1 ? b[0] / den : 0.0;
    x[0] = -g[0] / den;
    for (std::size_t z = 1; z < N; ++z) {
        den = a[z] - b[z - 1] * cp[z - 1];
        if (!(den > 0.0)) return false;
        cp[z] = z + 1 < N ? b[z] / den : 0.0;
        x[z] = (-g[z] - b[z - 1] * x[z - 1]) / den;
    }
    for (std::size_t z = N - 1; z-- > 0;) x[z] -= cp[z] * x[z + 1];

    std::vector<double> trial(N);
    double t = 1.0;
    for (int k = 0; k < 40; ++k, t *= 0.5) {
        for (std::size_t z = 0; z < N; ++z) trial[z] = u[z] + t * x[z];
        const double e = p.energy(trial).total;
        if (e < energy) {
            u.swap(trial);
            energy = e;
            return true;
        }
    }
    return false;
}

Grid unit_grid(long long n) {
    if (n < 2) throw ValidationError("n must be >= 2");
    return Grid::make(0.0, 1.0, 1.0 / static_cast<double>(n));
}

// Fills cells [first, first + q) (clipped) with an m-step staircase from v0 to v1;
// jump i sits at the node nearest to (i + 1/2) q / m.
void fill_staircase(std::vector<double>& out, std::size_t first, std::size_t q, int m, double v0, double v1) {
    const std::size_t end = std::min(out.size(), first + q);
    if (m <= 0) {
        for (std::size_t z = first; z < end; ++z) out[z] = v0;
        return;
    }
    const double dv = v1 - v0;
    int p = 0;
    for (std::size_t j = 0; first + j < end; ++j) {
        while (p < m && std::llround(static_cast<double>(q) * (p + 0.5) / m) <= static_cast<long long>(j)) ++p;
        out[first + j] = p == m ? v1 : v0 + dv * p / m;
    }
}

// Number of steps minimizing the rescaled cost estimate of an interval of
// rescaled length Ln carrying slope M.
int best_step_count(double M, double Ln, std::size_t q, const ScalePair& s, double beta) {
    if (M == 0.0) return 0;
    const double wr = s.delta_n / (s.omega * s.omega);
    int best_m = 1;
    double best = kInf;
    const int m_max = static_cast<int>(std::max<std::size_t>(1, q));
    for (int m = 1; m <= m_max; ++m) {
        const double J = std::abs(M) * Ln / m;
        const double e = m * wr * std::log1p((J / s.delta_n) * (J / s.delta_n)) +
                         beta * M * M * Ln * Ln * Ln / (12.0 * m * m);
        if (e < best) {
            best = e;
            best_m = m;
        }
    }
    return best_m;
}

double grid_mean(const ChainProblem& p) {
    double acc = 0.0, len = 0.0;
    for (std::size_t z = 0; z < p.size(); ++z) {
        acc += p.cell(z).len * p.cell(z).mean;
        len += p.cell(z).len;
    }
    return len > 0.0 ? acc / len : 0.0;
}

LabelSet coarse_labels(const ChainProblem& p, const MinimizeOptions& opts, double scale) {
    double mn = kInf, mx = -kInf;
    for (std::size_t z = 0; z < p.size(); ++z) {
        mn = std::min(mn, p.cell(z).mean);
        mx = std::max(mx, p.cell(z).mean);
    }
    for (const auto& pin : {p.pin_first, p.pin_last})
        if (pin) {
            mn = std::min(mn, *pin);
            mx = std::max(mx, *pin);
        }
    const double span = opts.span_factor * std::max(scale, mx - mn);
    LabelSet l;
    l.lo = mn - span;
    l.hi = mx + span;
    l.count = opts.label_count;
    l.refinement_levels = opts.refinement_levels;
    l.window = opts.window;
    l.shrink = opts.shrink;
    return l;
}

// Starting point from the jump-penalized limit model: step functions with jumps
// on block boundaries, plateaus at block-segment means, and a per-jump cost equal
// to the pair cost of a typical jump. The typical height starts at `scale` and is
// re-estimated from the previous solution.
std::vector<double> potts_start(const ChainProblem& p, double scale, std::size_t max_blocks) {
    const std::size_t N = p.size();
    const std::size_t c = (N + max_blocks - 1) / max_blocks;
    const std::size_t R = (N + c - 1) / c;
    std::vector<long double> P0(R + 1, 0.0L), P1(R + 1, 0.0L), PL(R + 1, 0.0L);
    for (std::size_t r = 0; r < R; ++r) {
        long double s0 = 0.0L, s1 = 0.0L, l = 0.0L;
        for (std::size_t z = r * c; z < std::min(N, (r + 1) * c); ++z) {
            const CellStats& st = p.cell(z);
            s0 += static_cast<long double>(st.len) * st.mean;
            s1 += static_cast<long double>(st.len) * st.mean * st.mean + st.var;
            l += st.len;
        }
        P0[r + 1] = P0[r] + s0;
        P1[r + 1] = P1[r] + s1;
        PL[r + 1] = PL[r] + l;
    }
    auto seg = [&](std::size_t i, std::size_t j, double& level) -> double {
        const long double S0 = P0[j] - P0[i], S1 = P1[j] - P1[i], L = PL[j] - PL[i];
        std::optional<double> fixed;
        if (p.pin_first && i == 0) fixed = p.pin_first;
        if (p.pin_last && j == R) {
            if (fixed && *fixed != *p.pin_last) return kInf;
            fixed = p.pin_last;
        }
        long double cost;
        if (fixed) {
            level = *fixed;
            cost = S1 - 2.0L * level * S0 + static_cast<long double>(level) * level * L;
        } else {
            level = L > 0.0L ? static_cast<double>(S0 / L) : 0.0;
            cost = L > 0.0L ? S1 - S0 * S0 / L : 0.0L;
        }
        return p.beta() * static_cast<double>(std::max(cost, 0.0L));
    };

    std::vector<double> out(N, 0.0), E(R + 1), C(R + 1);
    std::vector<std::size_t> from(R + 1);
    double J = scale;
    for (int round = 0; round < 3; ++round) {
        const double alpha = p.pair_cost(J);
        std::fill(E.begin(), E.end(), kInf);
        E[0] = 0.0;
        for (std::size_t j = 1; j <= R; ++j)
            for (std::size_t i = 0; i < j; ++i) {
                if (!(E[i] < kInf)) continue;
                double level = 0.0;
                const double e = E[i] + (i > 0 ? alpha : 0.0) + seg(i, j, level);
                if (e < E[j]) {
                    E[j] = e;
                    from[j] = i;
                    C[j] = level;
                }
            }
        std::vector<double> levels;
        for (std::size_t j = R; j > 0; j = from[j]) {
            for (std::size_t z = from[j] * c; z < std::min(N, j * c); ++z) out[z] = C[j];
            levels.push_back(C[j]);
        }
        if (levels.size() < 2) break;
        double hsum = 0.0;
        for (std::size_t k = 0; k + 1 < levels.size(); ++k) hsum += std::abs(levels[k + 1] - levels[k]);
        J = hsum / static_cast<double>(levels.size() - 1);
    }
    return out;
}

}  // namespace

std::vector<double> LabelSet::values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    const double h = spacing();
    for (int k = 0; k < count; ++k) v[k] = lo + k * h;
    return v;
}

void LabelSet::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) throw ValidationError("labels: need lo < hi");
    if (count < 2 || count > 65535) throw ValidationError("labels: count must be in [2, 65535]");
    if (refinement_levels < 0) throw ValidationError("labels: refinement_levels must be >= 0");
    if (window < 1) throw ValidationError("labels: window must be >= 1");
    if (shrink < 2) throw ValidationError("labels: shrink must be >= 2");
}

std::vector<double> solve_chain_dp(const ChainProblem& problem, const LabelSet& labels,
                                   const std::vector<double>* incumbent, std::vector<StageEnergy>* trace) {
    labels.validate();
    check_budget(problem, labels.count);
    const std::size_t N = problem.size();
    if (incumbent && incumbent->size() != N) throw ValidationError("chain dp: incumbent size mismatch");

    auto pinned = [&](std::size_t z) -> std::optional<double> {
        if (z == 0 && problem.pin_first) return problem.pin_first;
        if (z + 1 == N && problem.pin_last) return problem.pin_last;
        return std::nullopt;
    };

    std::vector<CellLabels> cl(N);
    const double h0 = labels.spacing();
    for (std::size_t z = 0; z < N; ++z) {
        if (auto v = pinned(z)) cl[z] = {*v, 0, 1};
        else cl[z] = {labels.lo, 0, labels.count};
    }
    std::vector<double> best = run_dp(problem, cl, h0, -1);
    double best_e = problem.energy(best).total;
    if (incumbent) {
        const double e = problem.energy(*incumbent).total;
        if (e <= best_e) {
            best = *incumbent;
            best_e = e;
        }
    }
    if (trace) trace->push_back({"chain_dp:coarse", best_e});

    double h = h0;
    for (int level = 1; level <= labels.refinement_levels; ++level) {
        h /= labels.shrink;
        const int c = labels.count / 2;
        for (std::size_t z = 0; z < N; ++z) {
            if (auto v = pinned(z)) cl[z] = {*v, 0, 1};
            else cl[z] = {best[z], c, labels.count};
        }
        std::vector<double> cand = run_dp(problem, cl, h, labels.window);
        const double e = problem.energy(cand).total;
        if (e < best_e) {
            best.swap(cand);
            best_e = e;
        }
        if (trace) trace->push_back({"chain_dp:refine" + std::to_string(level), best_e});
    }
    return best;
}

PolishResult polish_coordinate_descent(const ChainProblem& problem, std::vector<double> values, int max_sweeps) {
    const std::size_t N = problem.size();
    if (values.size() != N) throw ValidationError("polish: value count mismatch");
    PolishResult r;
    double energy = problem.energy(values).total;
    std::vector<double> saved;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        saved = values;
        for (std::size_t z = 0; z < N; ++z) {
            if ((z == 0 && problem.pin_first) || (z + 1 == N && problem.pin_last)) continue;
            CellObjective g{problem, z, z > 0, z + 1 < N, z > 0 ? values[z - 1] : 0.0,
                            z + 1 < N ? values[z + 1] : 0.0};
            double cands[4];
            int nc = 0;
            auto push = [&](double v) {
                for (int i = 0; i < nc; ++i)
                    if (cands[i] == v) return;
                cands[nc++] = v;
            };
            if (g.has_left) push(g.left);
            if (g.has_right) push(g.right);
            push(problem.cell(z).mean);
            push(values[z]);
            double t_best = values[z];
            double g_best = g.value(t_best);
            for (int i = 0; i < nc; ++i) {
                const double t = newton_refine(g, cands[i]);
                const double gv = g.value(t);
                if (gv < g_best) {
                    g_best = gv;
                    t_best = t;
                }
            }
            values[z] = t_best;
        }
        ++r.sweeps;
        double e = problem.energy(values).total;
        if (!(e < energy)) {
            values.swap(saved);
            e = energy;
        }
        const double before_newton = e;
        chain_newton_step(problem, values, e);
        if (!(e < before_newton) && !(before_newton < energy)) {
            r.converged = true;
            break;
        }
        const double gain = energy - e;
        energy = e;
        if (gain < 1e-12 * std::abs(energy)) {
            r.converged = true;
            break;
        }
    }
    r.values = std::move(values);
    return r;
}

std::pair<std::vector<double>, double> brute_force_min(const ChainProblem& problem, std::vector<double> labels) {
    if (labels.empty()) throw ValidationError("brute force: empty label list");
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    const std::size_t N = problem.size();
    std::vector<std::vector<double>> choices(N, labels);
    if (problem.pin_first) choices[0] = {*problem.pin_first};
    if (problem.pin_last) choices[N - 1] = {*problem.pin_last};
    double total = 1.0;
    for (const auto& c : choices) total *= static_cast<double>(c.size());
    if (total > kBruteBudget) throw BudgetError("brute force: more than 1e7 assignments");

    std::vector<std::size_t> idx(N, 0);
    std::vector<double> cur(N), best;
    double best_e = kInf;
    while (true) {
        for (std::size_t z = 0; z < N; ++z) cur[z] = choices[z][idx[z]];
        const double e = problem.energy(cur).total;
        if (e < best_e) {
            best_e = e;
            best = cur;
        }
        // odometer, last cell fastest: enumeration order is lexicographic
        std::size_t z = N;
        while (z > 0) {
            --z;
            if (++idx[z] < choices[z].size()) break;
            idx[z] = 0;
            if (z == 0) return {best, best_e};
        }
        if (N == 0) break;
    }
    return {best, best_e};
}

SolveReport minimize_chain(const ChainProblem& problem,
                           std::vector<std::pair<std::string, std::vector<double>>> candidates,
                           const MinimizeOptions& opts, double scale) {
    if (candidates.empty()) throw ValidationError("minimize: no starting candidates");
    std::size_t bi = 0;
    double be = kInf;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].second.size() != problem.size())
            throw ValidationError("minimize: candidate '" + candidates[i].first + "' has the wrong size");
        if (!problem.admissible(candidates[i].second)) continue;
        const double e = problem.energy(candidates[i].second).total;
        if (e < be) {
            be = e;
            bi = i;
        }
    }
    if (!(be < kInf)) throw ValidationError("minimize: no admissible starting candidate");

    std::vector<StageEnergy> trace{{"init:" + candidates[bi].first, be}};
    const LabelSet labels = coarse_labels(problem, opts, scale);
    std::vector<double> u = solve_chain_dp(problem, labels, &candidates[bi].second, &trace);
    PolishResult pr = polish_coordinate_descent(problem, std::move(u), opts.max_sweeps);
    const EnergyParts e = problem.energy(pr.values);
    trace.push_back({"polish", e.total});
    return SolveReport{PCFn(problem.grid(), std::move(pr.values)), e, std::move(trace), pr.sweeps, pr.converged};
}

PCFn init_competitor(const Forcing& f, double beta, long long n, double L) {
    if (!(L > 0.0) || !std::isfinite(L)) throw ValidationError("init_competitor: L must be positive");
    if (!(beta > 0.0)) throw ValidationError("init_competitor: beta must be positive");
    const ScalePair s = scales(n);
    const Grid g = unit_grid(n);
    const std::size_t q = static_cast<std::size_t>(std::ceil(L / s.delta_n - 1e-9));
    if (q < 2) throw ValidationError("init_competitor: degenerate partition (L_n omega(n) < 2/n)");
    const double Ln = static_cast<double>(q) * s.delta_n;
    const double nd = static_cast<double>(n);
    const double width = static_cast<double>(q) / nd;
    std::vector<double> u(g.ncells());
    for (std::size_t first = 0; first < u.size(); first += q) {
        const double x0 = static_cast<double>(first) / nd;
        const double x1 = static_cast<double>(first + q) / nd;
        const double f0 = f.value(x0), f1 = f.value(x1);
        const double M = (f1 - f0) / width;
        fill_staircase(u, first, q, best_step_count(M, Ln, q, s, beta), f0, f1);
    }
    return PCFn(g, std::move(u));
}

PCFn solve_chain_dp(const Forcing& f, double beta, long long n, const LabelSet& labels) {
    const ChainProblem p = dpmf_problem(unit_grid(n), f, beta, n);
    return PCFn(p.grid(), solve_chain_dp(p, labels));
}

PCFn polish_coordinate_descent(const PCFn& u, const Forcing& f, double beta, long long n, int max_sweeps) {
    const ChainProblem p = dpmf_problem(u.grid(), f, beta, n);
    std::vector<double> v(u.values().begin(), u.values().end());
    return PCFn(u.grid(), polish_coordinate_descent(p, std::move(v), max_sweeps).values);
}

std::pair<PCFn, double> brute_force_min(const Forcing& f, double beta, long long n,
                                        const std::vector<double>& labels) {
    const ChainProblem p = dpmf_problem(unit_grid(n), f, beta, n);
    auto [v, e] = brute_force_min(p, labels);
    return {PCFn(p.grid(), std::move(v)), e};
}

SolveReport minimize_dpmf(const Forcing& f, double beta, long long n, const MinimizeOptions& opts) {
    const ChainProblem p = dpmf_problem(unit_grid(n), f, beta, n);
    std::vector<std::pair<std::string, std::vector<double>>> cands;
    for (double L : opts.L_list) {
        PCFn c = init_competitor(f, beta, n, L);
        char name[64];
        std::snprintf(name, sizeof name, "competitor L=%g", L);
        cands.emplace_back(name, std::vector<double>(c.values().begin(), c.values().end()));
    }
    cands.emplace_back("constant", std::vector<double>(p.size(), grid_mean(p)));
    cands.emplace_back("jump model", potts_start(p, scales(n).omega, kPottsBlocks));
    for (std::size_t i = 0; i < opts.warm_starts.size(); ++i)
        cands.emplace_back("warm" + std::to_string(i), opts.warm_starts[i]);
    return minimize_chain(p, std::move(cands), opts, scales(n).omega);
}

MuResult mu_n_numeric(double beta, double L, double M, long long n, bool bc, const MinimizeOptions& opts) {
    if (!(L > 0.0) || !std::isfinite(L) || !std::isfinite(M)) throw ValidationError("mu_n: need finite L > 0");
    const ScalePair s = scales(n);
    if (bc && !(L > s.delta_n)) throw ValidationError("mu_n: boundary conditions need L > delta(n)");
    ChainProblem p = rdpmf_problem(Forcing::affine(M, 0.0, {0.0, L}), beta, n, {0.0, L});
    if (bc) {
        p.pin_first = 0.0;
        p.pin_last = M * L;
    }
    const std::size_t N = p.size();
    std::vector<std::pair<std::string, std::vector<double>>> cands;
    const int m0 = best_step_count(M, L, N, s, std::max(beta, 1e-300));
    for (int m : {m0 - 1, m0, m0 + 1}) {
        if (m < (M != 0.0 ? 1 : 0)) continue;
        std::vector<double> u(N);
        fill_staircase(u, 0, N, m, 0.0, M * L);
        if (bc) {
            u.front() = 0.0;
            u.back() = M * L;
        }
        cands.emplace_back("staircase m=" + std::to_string(m), std::move(u));
    }
    if (!bc) cands.emplace_back("constant", std::vector<double>(N, grid_mean(p)));
    for (std::size_t i = 0; i < opts.warm_starts.size(); ++i)
        cands.emplace_back("warm" + std::to_string(i), opts.warm_starts[i]);
    SolveReport r = minimize_chain(p, std::move(cands), opts, 1.0);

    // Jumps of a grid function: increments in the steep slope regime.
    const double t = 1.0 / std::pow(std::log(static_cast<double>(n)), 4);
    int jumps = 0;
    auto v = r.minimizer.values();
    for (std::size_t z = 0; z + 1 < v.size(); ++z)
        if (std::abs(v[z + 1] - v[z]) > t) ++jumps;
    return MuResult{r.energy.total, std::move(r.minimizer), jumps};
}

}  // namespace pmstair
