#include "pmstair/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pmstair/analysis.hpp"
#include "pmstair/energy.hpp"
#include "pmstair/limit_models.hpp"
#include "pmstair/solve.hpp"

namespace pmstair::cli {

namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ValidationError("config: '" + key + "' expects a number, got '" + v + "'");
    }
    if (pos != v.size() || !std::isfinite(x))
        throw ValidationError("config: '" + key + "' expects a finite number, got '" + v + "'");
    return x;
}

long long parse_int(const std::string& key, const std::string& v) {
    const double x = parse_double(key, v);
    if (x != std::floor(x) || std::abs(x) > 9e15)
        throw ValidationError("config: '" + key + "' expects an integer, got '" + v + "'");
    return static_cast<long long>(x);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError("config: '" + key + "' expects true or false, got '" + v + "'");
}

template <class T, class P>
std::vector<T> parse_list(const std::string& key, const std::string& v, P parse) {
    std::vector<T> out;
    for (const std::string& item : split(v, ',')) out.push_back(parse(key, item));
    if (out.empty()) throw ValidationError("config: '" + key + "' expects a non-empty list");
    return out;
}

// ---- emitters ----

void emit_json(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::null: out += "null"; break;
        case json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
        case json::value_t::number_integer: out += std::to_string(j.get<long long>()); break;
        case json::value_t::number_unsigned: out += std::to_string(j.get<unsigned long long>()); break;
        case json::value_t::number_float: {
            const double x = j.get<double>();
            out += std::isfinite(x) ? fmt(x) : "null";
            break;
        }
        case json::value_t::string: out += j.dump(); break;
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const json& e : j) {
                if (!first) out += ',';
                first = false;
                emit_json(e, out);
            }
            out += ']';
            break;
        }
        case json::value_t::object: {
            // nlohmann::json objects are std::map backed: keys iterate sorted
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                emit_json(it.value(), out);
            }
            out += '}';
            break;
        }
        default: throw ValidationError("json: unsupported value");
    }
}

}  // namespace

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

namespace {

class Csv {
public:
    explicit Csv(std::vector<std::string> header) : width_(header.size()) { row(header); }
    void row(const std::vector<std::string>& cells) {
        if (cells.size() != width_) throw std::logic_error("csv: row width mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += csv_escape(cells[i]);
        }
        text_ += "\r\n";
    }
    const std::string& str() const { return text_; }

private:
    std::size_t width_;
    std::string text_;
};

std::string render_json(const json& j) {
    std::string out;
    emit_json(j, out);
    out += '\n';
    return out;
}

// ---- helpers ----

int worker_count(const ExperimentConfig& cfg) {
    int t = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("PMSTAIR_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) t = std::min(t, cap);
    }
    return std::max(1, t);
}

MinimizeOptions solver_options(const ExperimentConfig& cfg) {
    MinimizeOptions o;
    o.L_list = cfg.L_list;
    o.label_count = cfg.label_count;
    o.refinement_levels = cfg.refinement_levels;
    o.window = cfg.window;
    o.shrink = cfg.shrink;
    o.max_sweeps = cfg.max_sweeps;
    return o;
}

json energy_json(const EnergyParts& e) {
    return json{{"fidelity", e.fidelity}, {"roughness", e.roughness}, {"total", e.total}};
}

json header(const ExperimentConfig& cfg) {
    return json{{"command", cfg.command}, {"seed", cfg.seed}};
}

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.beta > 0.0)) throw ValidationError("config: beta must be positive");
    if (!(cfg.alpha > 0.0)) throw ValidationError("config: alpha must be positive");
    if (cfg.n < 2) throw ValidationError("config: n must be >= 2");
    for (long long n : cfg.n_list)
        if (n < 2) throw ValidationError("config: every n_list entry must be >= 2");
    for (double L : cfg.L_list)
        if (!(L > 0.0)) throw ValidationError("config: L_list entries must be positive");
    if (cfg.format != "csv" && cfg.format != "json") throw ValidationError("config: format must be csv or json");
    if (cfg.variant != "w" && cfg.variant != "v") throw ValidationError("config: variant must be w or v");
    if (cfg.source != "canonical" && cfg.source != "blowup")
        throw ValidationError("config: source must be canonical or blowup");
    if (cfg.quad_order < 2) throw ValidationError("config: quad_order must be >= 2");
    if (cfg.max_sweeps < 0) throw ValidationError("config: max_sweeps must be >= 0");
    if (cfg.periods < 1) throw ValidationError("config: periods must be >= 1");
    if (!(cfg.tol > 0.0)) throw ValidationError("config: tol must be positive");
    if (!(cfg.step_scale > 0.0)) throw ValidationError("config: step_scale must be positive");
    for (double L : cfg.L)
        if (!(L > 0.0)) throw ValidationError("config: L entries must be positive");
}

// ---- commands ----

std::string cmd_minimize(const ExperimentConfig& cfg) {
    const Forcing f = parse_forcing(cfg.forcing, cfg.quad_order);
    const SolveReport r = minimize_dpmf(f, cfg.beta, cfg.n, solver_options(cfg));
    const ScalePair s = scales(cfg.n);
    const auto v = r.minimizer.values();
    if (cfg.format == "csv") {
        Csv csv({"index", "value"});
        for (std::size_t i = 0; i < v.size(); ++i) csv.row({std::to_string(i), fmt(v[i])});
        return csv.str();
    }
    json j = header(cfg);
    j["forcing"] = f.describe();
    j["beta"] = cfg.beta;
    j["n"] = cfg.n;
    j["omega"] = s.omega;
    j["energy"] = energy_json(r.energy);
    j["ratio"] = r.energy.total / (s.omega * s.omega);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    json trace = json::array();
    for (const StageEnergy& st : r.pipeline_trace) trace.push_back(json{{"stage", st.stage}, {"energy", st.energy}});
    j["pipeline_trace"] = trace;
    if (cfg.dump_minimizer) {
        json dump = json::array();
        for (std::size_t i = 0; i < v.size(); ++i) dump.push_back(json::array({static_cast<long long>(i), v[i]}));
        j["minimizer"] = dump;
    }
    return render_json(j);
}

std::string cmd_scaling(const ExperimentConfig& cfg) {
    const Forcing f = parse_forcing(cfg.forcing, cfg.quad_order);
    const auto rows = scaling_experiment(f, cfg.beta, cfg.n_list, solver_options(cfg), worker_count(cfg));
    if (cfg.format == "csv") {
        Csv csv({"n", "omega", "m_n", "ratio", "limit_value"});
        for (const ScalingRow& r : rows)
            csv.row({std::to_string(r.n), fmt(r.omega), fmt(r.m_n), fmt(r.ratio), fmt(r.limit_value)});
        return csv.str();
    }
    json j = header(cfg);
    j["forcing"] = f.describe();
    j["beta"] = cfg.beta;
    j["out_of_hypothesis"] = f.is_step();
    json arr = json::array();
    for (const ScalingRow& r : rows)
        arr.push_back(json{{"n", r.n}, {"omega", r.omega}, {"m_n", r.m_n}, {"ratio", r.ratio},
                           {"limit_value", r.limit_value}});
    j["rows"] = arr;
    return render_json(j);
}

std::string cmd_blowup(const ExperimentConfig& cfg) {
    const Forcing f = parse_forcing(cfg.forcing, cfg.quad_order);
    const BlowupResult b = blowup_experiment(f, cfg.beta, cfg.n, cfg.center,
                                             cfg.variant == "w" ? BlowupVariant::w : BlowupVariant::v,
                                             solver_options(cfg));
    const std::string nan = "";
    auto opt = [&](bool has, double x) { return has ? fmt(x) : nan; };
    if (cfg.format == "csv") {
        Csv csv({"n", "center", "variant", "H_pred", "V_pred", "H_est", "V_est", "tau0_est", "residual", "jumps",
                 "window"});
        csv.row({std::to_string(cfg.n), fmt(cfg.center), cfg.variant, opt(b.H_pred.has_value(), b.H_pred.value_or(0)),
                 fmt(b.V_pred), opt(b.fit.has_value(), b.fit ? b.fit->H : 0), opt(b.fit.has_value(), b.fit ? b.fit->V : 0),
                 opt(b.fit.has_value(), b.fit ? b.fit->tau0 : 0), opt(b.fit.has_value(), b.fit ? b.fit->residual : 0),
                 std::to_string(b.fit ? b.fit->jumps.size() : 0), fmt(b.window)});
        return csv.str();
    }
    json j = header(cfg);
    j["forcing"] = f.describe();
    j["beta"] = cfg.beta;
    j["n"] = cfg.n;
    j["center"] = cfg.center;
    j["variant"] = cfg.variant;
    j["window"] = b.window;
    j["energy"] = energy_json(b.report.energy);
    j["predicted"] = b.H_pred ? json{{"H", *b.H_pred}, {"V", b.V_pred}} : json(nullptr);
    if (b.fit) {
        json jumps = json::array();
        for (const Jump& jp : b.fit->jumps) jumps.push_back(json::array({jp.position, jp.height}));
        j["fit"] = json{{"H", b.fit->H}, {"V", b.fit->V}, {"tau0", b.fit->tau0}, {"residual", b.fit->residual},
                        {"jumps", jumps}};
    } else {
        j["fit"] = nullptr;
    }
    return render_json(j);
}

std::string cmd_varifold(const ExperimentConfig& cfg) {
    const Forcing f = parse_forcing(cfg.forcing, cfg.quad_order);
    std::vector<SolveReport> reports;
    scaling_experiment(f, cfg.beta, cfg.n_list, solver_options(cfg), worker_count(cfg), &reports);
    struct Row {
        long long n;
        std::string phi;
        double lhs;
        VarifoldRHS rhs;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < reports.size(); ++i)
        for (const NamedTestFn& t : phi_battery())
            rows.push_back({cfg.n_list[i], t.name, varifold_lhs(reports[i].minimizer, t.phi), varifold_rhs(f, t.phi)});
    if (cfg.format == "csv") {
        Csv csv({"n", "phi", "lhs", "rhs", "ac_term", "diffuse_plus", "diffuse_minus", "jump_plus", "jump_minus",
                 "error"});
        for (const Row& r : rows)
            csv.row({std::to_string(r.n), r.phi, fmt(r.lhs), fmt(r.rhs.total), fmt(r.rhs.ac_term),
                     fmt(r.rhs.diffuse_plus), fmt(r.rhs.diffuse_minus), fmt(r.rhs.jump_plus), fmt(r.rhs.jump_minus),
                     fmt(std::abs(r.lhs - r.rhs.total))});
        return csv.str();
    }
    json j = header(cfg);
    j["forcing"] = f.describe();
    j["beta"] = cfg.beta;
    json arr = json::array();
    for (const Row& r : rows)
        arr.push_back(json{{"n", r.n},
                           {"phi", r.phi},
                           {"lhs", r.lhs},
                           {"rhs", json{{"ac_term", r.rhs.ac_term},
                                        {"diffuse_plus", r.rhs.diffuse_plus},
                                        {"diffuse_minus", r.rhs.diffuse_minus},
                                        {"jump_plus", r.rhs.jump_plus},
                                        {"jump_minus", r.rhs.jump_minus},
                                        {"total", r.rhs.total}}},
                           {"error", std::abs(r.lhs - r.rhs.total)}});
    j["rows"] = arr;
    return render_json(j);
}

std::string cmd_mu_table(const ExperimentConfig& cfg) {
    std::vector<std::string> cols{"alpha", "beta", "L", "M", "m_star", "mu_star", "lower", "upper", "mu_bc", "mu_free"};
    if (cfg.mu_n > 0) cols.push_back("mu_n_bc");
    std::vector<std::vector<double>> rows;
    for (double L : cfg.L)
        for (double M : cfg.M) {
            const MuResult star = mu_star_formula(cfg.alpha, cfg.beta, L, M);
            const MuBounds bd = mu_bounds(cfg.alpha, cfg.beta, L, M);
            const MuResult bc = mu_numeric(cfg.alpha, cfg.beta, L, M, true, cfg.resolution);
            const MuResult fr = mu_numeric(cfg.alpha, cfg.beta, L, M, false, cfg.resolution);
            std::vector<double> row{cfg.alpha, cfg.beta, L, M, static_cast<double>(star.m_jumps), star.value,
                                    bd.lower, bd.upper, bc.value, fr.value};
            if (cfg.mu_n > 0) row.push_back(mu_n_numeric(cfg.beta, L, M, cfg.mu_n, true, solver_options(cfg)).value);
            rows.push_back(row);
        }
    if (cfg.format == "csv") {
        Csv csv(cols);
        for (const auto& r : rows) {
            std::vector<std::string> cells;
            for (std::size_t i = 0; i < r.size(); ++i)
                cells.push_back(cols[i] == "m_star" ? std::to_string(static_cast<long long>(r[i])) : fmt(r[i]));
            csv.row(cells);
        }
        return csv.str();
    }
    json j = header(cfg);
    j["resolution"] = cfg.resolution;
    if (cfg.mu_n > 0) j["mu_n"] = cfg.mu_n;
    json arr = json::array();
    for (const auto& r : rows) {
        json o;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (cols[i] == "m_star") o[cols[i]] = static_cast<long long>(r[i]);
            else o[cols[i]] = r[i];
        }
        arr.push_back(o);
    }
    j["rows"] = arr;
    return render_json(j);
}

// Step function of a fitted blow-up: detected jumps, plateaus at the mean of w.
StepFn blowup_stepfn(const PCFn& w, const StaircaseFit& fit, Interval window) {
    std::vector<double> cuts{window.lo};
    for (const Jump& j : fit.jumps) cuts.push_back(j.position);
    cuts.push_back(window.hi);
    std::vector<double> levels;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double acc = 0.0;
        int cnt = 0;
        for (std::size_t z = 0; z < w.size(); ++z) {
            const double y = w.grid().cell_mid(z);
            if (y > cuts[k] && y < cuts[k + 1]) {
                acc += w[z];
                ++cnt;
            }
        }
        levels.push_back(cnt ? acc / cnt : (levels.empty() ? 0.0 : levels.back()));
    }
    std::vector<Jump> jumps;
    for (std::size_t k = 0; k < fit.jumps.size(); ++k) {
        const double h = levels[k + 1] - levels[k];
        if (h != 0.0) jumps.push_back({fit.jumps[k].position, h});
    }
    return StepFn(levels.front(), std::move(jumps), window);
}

std::string cmd_check_localmin(const ExperimentConfig& cfg) {
    json j = header(cfg);
    j["source"] = cfg.source;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["tol"] = cfg.tol;
    LocalMinReport rep;
    double energy_per_length = 0.0;
    if (cfg.source == "canonical") {
        const double M = cfg.M.front();
        const HVParams hv = hv_params(cfg.beta, M, cfg.alpha);
        const double H = hv.H.value_or(1.0) * cfg.step_scale;
        const Staircase st{H, M * H, 0.0, StairMode::oblique};
        const Interval win{0.0, 2.0 * cfg.periods * H};
        const StepFn v = staircase_to_stepfn(st, win);
        rep = check_local_min_properties(v, M, win, cfg.alpha, cfg.beta, cfg.tol);
        energy_per_length = jf_energy(v, Forcing::affine(M, 0.0, win), cfg.alpha, cfg.beta, win).total / win.length();
        j["M"] = M;
        j["H"] = H;
        j["V"] = M * H;
        j["step_scale"] = cfg.step_scale;
    } else {
        const Forcing f = parse_forcing(cfg.forcing, cfg.quad_order);
        const BlowupResult b = blowup_experiment(f, cfg.beta, cfg.n, cfg.center, BlowupVariant::w, solver_options(cfg));
        if (!b.fit) throw ValidationError("check-localmin: the blow-up shows fewer than two jumps");
        const double M = f.derivative(cfg.center);
        const Interval win{b.fit->jumps.front().position - b.fit->H, b.fit->jumps.back().position + b.fit->H};
        const StepFn v = blowup_stepfn(b.blowup, *b.fit, win);
        rep = check_local_min_properties(v, M, win, cfg.alpha, cfg.beta, cfg.tol);
        energy_per_length = jf_energy(v, Forcing::affine(M, 0.0, win), cfg.alpha, cfg.beta, win).total / win.length();
        j["forcing"] = f.describe();
        j["n"] = cfg.n;
        j["center"] = cfg.center;
        j["M"] = M;
        j["H"] = b.fit->H;
        j["V"] = b.fit->V;
    }
    j["energy_per_length"] = energy_per_length;
    j["jumps"] = rep.jumps;
    j["crossings"] = rep.crossings;
    j["all_pass"] = rep.all_pass();
    const bool pass[4] = {rep.check1, rep.check2, rep.check3, rep.check4};
    const double res[4] = {rep.residual1, rep.residual2, rep.residual3, rep.residual4};
    if (cfg.format == "csv") {
        Csv csv({"check", "pass", "residual"});
        for (int i = 0; i < 4; ++i) csv.row({std::to_string(i + 1), pass[i] ? "true" : "false", fmt(res[i])});
        return csv.str();
    }
    json checks = json::array();
    for (int i = 0; i < 4; ++i) checks.push_back(json{{"check", i + 1}, {"pass", pass[i]}, {"residual", res[i]}});
    j["checks"] = checks;
    return render_json(j);
}

}  // namespace

Forcing parse_forcing(const std::string& spec, int quad_order) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ValidationError("forcing: expected kind:params, got '" + spec + "'");
    const std::string kind = trim(spec.substr(0, colon));
    const std::string body = trim(spec.substr(colon + 1));
    if (kind == "affine") {
        const auto p = split(body, ',');
        if (p.size() != 2) throw ValidationError("forcing: affine expects M,c");
        return Forcing::affine(parse_double("forcing", p[0]), parse_double("forcing", p[1]));
    }
    if (kind == "step") {
        const auto parts = split(body, ';');
        if (parts.empty() || parts[0].empty()) throw ValidationError("forcing: step expects base;pos,height;...");
        std::vector<Jump> jumps;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            const auto p = split(parts[i], ',');
            if (p.size() != 2) throw ValidationError("forcing: step jump expects pos,height");
            jumps.push_back({parse_double("forcing", p[0]), parse_double("forcing", p[1])});
        }
        return Forcing::step(parse_double("forcing", parts[0]), std::move(jumps));
    }
    if (kind == "smooth") return Forcing::builtin(body, quad_order);
    throw ValidationError("forcing: unknown kind '" + kind + "'");
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    auto as_int = [&] { return static_cast<int>(parse_int(key, v)); };
    if (key == "command") c.command = v;
    else if (key == "forcing") c.forcing = v;
    else if (key == "quad_order") c.quad_order = as_int();
    else if (key == "beta") c.beta = parse_double(key, v);
    else if (key == "alpha") c.alpha = parse_double(key, v);
    else if (key == "n") c.n = parse_int(key, v);
    else if (key == "n_list") c.n_list = parse_list<long long>(key, v, parse_int);
    else if (key == "L_list") c.L_list = parse_list<double>(key, v, parse_double);
    else if (key == "center") c.center = parse_double(key, v);
    else if (key == "seed") c.seed = parse_int(key, v);
    else if (key == "output") c.output = v;
    else if (key == "format") c.format = v;
    else if (key == "label_count") c.label_count = as_int();
    else if (key == "refinement_levels") c.refinement_levels = as_int();
    else if (key == "window") c.window = as_int();
    else if (key == "shrink") c.shrink = as_int();
    else if (key == "max_sweeps") c.max_sweeps = as_int();
    else if (key == "dump_minimizer") c.dump_minimizer = parse_bool(key, v);
    else if (key == "threads") c.threads = as_int();
    else if (key == "variant") c.variant = v;
    else if (key == "M") c.M = parse_list<double>(key, v, parse_double);
    else if (key == "L") c.L = parse_list<double>(key, v, parse_double);
    else if (key == "resolution") c.resolution = as_int();
    else if (key == "mu_n") c.mu_n = parse_int(key, v);
    else if (key == "source") c.source = v;
    else if (key == "step_scale") c.step_scale = parse_double(key, v);
    else if (key == "periods") c.periods = as_int();
    else if (key == "tol") c.tol = parse_double(key, v);
    else throw ValidationError("config: unknown key '" + key + "'");
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot read '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config: line " + std::to_string(lineno) + " is not key = value");
        apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

ExperimentConfig parse_args(const std::vector<std::string>& args) {
    if (args.empty()) throw ValidationError("usage: pmstair <command> [--config path] [--set key=value]...");
    ExperimentConfig cfg;
    cfg.command = args[0];
    std::vector<std::pair<std::string, std::string>> overrides;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        if ((a == "--config" || a == "--set") && i + 1 >= args.size())
            throw ValidationError("usage: " + a + " needs an argument");
        if (a == "--config") {
            load_config_file(cfg, args[++i]);
        } else if (a == "--set") {
            const std::string& kv = args[++i];
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ValidationError("usage: --set expects key=value");
            overrides.emplace_back(trim(kv.substr(0, eq)), kv.substr(eq + 1));
        } else {
            throw ValidationError("usage: unexpected argument '" + a + "'");
        }
    }
    for (const auto& [k, v] : overrides) apply_setting(cfg, k, v);
    cfg.command = args[0];
    return cfg;
}

std::string render(const ExperimentConfig& cfg) {
    validate(cfg);
    if (cfg.command == "minimize") return cmd_minimize(cfg);
    if (cfg.command == "scaling") return cmd_scaling(cfg);
    if (cfg.command == "blowup") return cmd_blowup(cfg);
    if (cfg.command == "varifold") return cmd_varifold(cfg);
    if (cfg.command == "mu-table") return cmd_mu_table(cfg);
    if (cfg.command == "check-localmin") return cmd_check_localmin(cfg);
    throw ValidationError("unknown command '" + cfg.command + "'");
}

int run(const std::vector<std::string>& args, std::ostream& err) {
    try {
        const ExperimentConfig cfg = parse_args(args);
        const std::string text = render(cfg);
        if (cfg.output.empty()) {
            std::cout << text;
            std::cout.flush();
            if (!std::cout) throw IoError("cannot write to standard output");
        } else {
            std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
            if (!out) throw IoError("cannot open output '" + cfg.output + "'");
            out << text;
            out.close();
            if (!out) throw IoError("failed writing output '" + cfg.output + "'");
        }
        return kOk;
    } catch (const BudgetError& e) {
        err << "pmstair: budget: " << e.what() << '\n';
        return kBudget;
    } catch (const std::invalid_argument& e) {
        err << "pmstair: " << e.what() << '\n';
        return kValidation;
    } catch (const IoError& e) {
        err << "pmstair: io: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        err << "pmstair: error: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace pmstair::cli
