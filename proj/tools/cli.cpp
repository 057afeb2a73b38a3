#include "cli.hpp"

#include "twolayer/contour.hpp"
#include "twolayer/dispersion.hpp"
#include "twolayer/embedded.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/potentialflow.hpp"
#include "twolayer/spectra.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

namespace twolayer::cli {

using nlohmann::json;

namespace {

double parse_double(const std::string& text, const std::string& field) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && last[-1] == ' ') --last;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
        throw ValidationError(field + ": '" + text + "' is not a number");
    }
    return v;
}

int parse_int(const std::string& text, const std::string& field) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ValidationError(field + ": '" + text + "' is not an integer");
    }
    return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& field) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_double(item, field));
    if (out.empty()) throw ValidationError(field + ": empty list");
    return out;
}

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string fmt(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string();
}

std::string fmt(bool v) {
    return v ? "true" : "false";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

using Row = std::vector<std::string>;

struct Table {
    Row header;
    std::vector<Row> rows;
};

// Key names match the long flags; setters are used for config-file values.
using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"beta", [](RunConfig& c, const std::string& v) { c.beta = parse_double(v, "beta"); }},
        {"b", [](RunConfig& c, const std::string& v) { c.b = parse_double(v, "b"); }},
        {"k", [](RunConfig& c, const std::string& v) { c.k = parse_double(v, "k"); }},
        {"side", [](RunConfig& c, const std::string& v) { c.side = v; }},
        {"a", [](RunConfig& c, const std::string& v) { c.a = parse_double(v, "a"); }},
        {"epsilon",
         [](RunConfig& c, const std::string& v) { c.epsilon = parse_double(v, "epsilon"); }},
        {"shape", [](RunConfig& c, const std::string& v) { c.shape = v; }},
        {"r", [](RunConfig& c, const std::string& v) { c.r = parse_double(v, "r"); }},
        {"a0", [](RunConfig& c, const std::string& v) { c.a0 = parse_double(v, "a0"); }},
        {"b0", [](RunConfig& c, const std::string& v) { c.b0 = parse_double(v, "b0"); }},
        {"theta0",
         [](RunConfig& c, const std::string& v) { c.theta0 = parse_double(v, "theta0"); }},
        {"fourier-file", [](RunConfig& c, const std::string& v) { c.fourier_file = v; }},
        {"N", [](RunConfig& c, const std::string& v) { c.N = parse_int(v, "N"); }},
        {"g", [](RunConfig& c, const std::string& v) { c.g = parse_double(v, "g"); }},
        {"out", [](RunConfig& c, const std::string& v) { c.out = v; }},
        {"sweep", [](RunConfig& c, const std::string& v) { c.sweep = parse_sweep(v); }},
        {"alphas", [](RunConfig& c, const std::string& v) { c.alphas = parse_list(v, "alphas"); }},
    };
    return table;
}

std::string sweep_text(const SweepSpec& s) {
    return s.param + ":" + fmt(s.start) + ":" + fmt(s.stop) + ":" + std::to_string(s.count);
}

json inputs_json(const RunConfig& c) {
    json j;
    j["beta"] = c.beta;
    j["b"] = c.b;
    j["k"] = c.k;
    j["side"] = c.side;
    j["a"] = c.a;
    j["epsilon"] = c.epsilon;
    j["shape"] = c.shape;
    j["r"] = c.r;
    j["a0"] = c.a0;
    j["b0"] = c.b0;
    j["theta0"] = c.theta0;
    j["fourier-file"] = c.fourier_file;
    j["N"] = c.N;
    j["g"] = c.g ? json(*c.g) : json(nullptr);
    j["out"] = c.out;
    j["sweep"] = c.sweep ? json(sweep_text(*c.sweep)) : json(nullptr);
    j["alphas"] = c.alphas;
    return j;
}

void set_param(RunConfig& c, const std::string& param, double v) {
    if (param == "alpha") {
        c.beta = 1.0 - v;
        return;
    }
    static const std::map<std::string, double RunConfig::*> fields = {
        {"beta", &RunConfig::beta}, {"b", &RunConfig::b},   {"k", &RunConfig::k},
        {"a", &RunConfig::a},       {"epsilon", &RunConfig::epsilon}, {"r", &RunConfig::r},
        {"a0", &RunConfig::a0},     {"b0", &RunConfig::b0}, {"theta0", &RunConfig::theta0},
    };
    if (param == "g") {
        c.g = v;
        return;
    }
    const auto it = fields.find(param);
    if (it == fields.end()) {
        throw ValidationError("sweep: parameter '" + param + "' cannot be swept");
    }
    c.*(it->second) = v;
}

// State shared by all rows of one run and echoed into the manifest.
struct RunState {
    std::optional<BemDiagnostics> bem;
    std::optional<BemDipoles> fourier_cache;
    std::set<std::string> warnings;
};

FluidConfig fluid(const RunConfig& c) {
    return FluidConfig(c.beta, c.b, c.k);
}

Side side_of(const RunConfig& c) {
    if (c.side == "U") return Side::upper;
    if (c.side == "L") return Side::lower;
    throw ValidationError("side: unknown value '" + c.side + "' (expected U or L)");
}

Contour build_contour(const RunConfig& c) {
    if (c.shape == "circle") return make_circle(c.r);
    if (c.shape == "ellipse") return make_ellipse(c.a0, c.b0, c.theta0);
    if (c.shape == "fourier") {
        if (c.fourier_file.empty()) {
            throw ValidationError("fourier-file: required for shape fourier");
        }
        return make_fourier(read_fourier_file(c.fourier_file));
    }
    throw ValidationError("shape: unknown value '" + c.shape +
                          "' (expected circle, ellipse or fourier)");
}

std::size_t node_count(const RunConfig& c) {
    if (c.N <= 0) throw ValidationError("N: must be positive");
    return static_cast<std::size_t>(c.N);
}

// Closed forms for the canonical shapes, the boundary-element solver otherwise.
DipoleStrengths dipoles_for(const RunConfig& c, RunState& st) {
    if (c.shape == "circle") {
        make_circle(c.r);
        return analytic_dipoles_circle(c.r);
    }
    if (c.shape == "ellipse") {
        make_ellipse(c.a0, c.b0, c.theta0);
        return analytic_dipoles_ellipse(c.a0, c.b0, c.theta0);
    }
    if (!st.fourier_cache) {
        st.fourier_cache = dipoles_bem(build_contour(c), node_count(c));
        st.bem = st.fourier_cache->diagnostics;
    }
    return st.fourier_cache->dipoles;
}

void note(RunState& st, const std::vector<std::string>& warnings) {
    st.warnings.insert(warnings.begin(), warnings.end());
}

const Row kCutoffsHeader = {"beta",   "b",  "k",  "Lambda1",       "Lambda2",
                            "tau1",   "p1_zero", "q1", "q2", "dlambda1_at_k",
                            "dlambda1_at_tau1"};

Row row_cutoffs(const RunConfig& c, RunState&) {
    const auto cfg = fluid(c);
    const auto ctx = spectral_context(cfg);
    return {fmt(c.beta),       fmt(c.b),       fmt(c.k),  fmt(ctx.Lambda1),
            fmt(ctx.Lambda2),  fmt(ctx.tau1),  fmt(ctx.p1_zero), fmt(ctx.q1),
            fmt(ctx.q2),       fmt(ctx.dlambda1_at_k), fmt(ctx.dlambda1_at_tau1)};
}

const Row kDipolesHeader = {"shape",          "N",          "mu",       "nu",
                            "kappa",          "S",          "delta",    "mu_flux",
                            "gauss_residual", "condition_estimate", "nu_route_gap",
                            "mu_analytic",    "nu_analytic", "kappa_analytic"};

Row row_dipoles(const RunConfig& c, RunState& st) {
    const auto contour = build_contour(c);
    const auto n = node_count(c);
    const auto bem = dipoles_bem(contour, n);
    if (!st.bem) st.bem = bem.diagnostics;
    std::optional<DipoleStrengths> exact;
    if (c.shape == "circle") exact = analytic_dipoles_circle(c.r);
    if (c.shape == "ellipse") exact = analytic_dipoles_ellipse(c.a0, c.b0, c.theta0);
    const auto& d = bem.dipoles;
    auto opt = [&exact](double DipoleStrengths::*f) {
        return exact ? fmt((*exact).*f) : std::string();
    };
    return {c.shape,
            std::to_string(n),
            fmt(d.mu),
            fmt(d.nu),
            fmt(d.kappa),
            fmt(d.S),
            fmt(d.delta()),
            fmt(mu_flux_form(contour, n)),
            fmt(bem.diagnostics.gauss_residual),
            fmt(bem.diagnostics.condition_estimate),
            fmt(bem.diagnostics.nu_route_gap),
            opt(&DipoleStrengths::mu),
            opt(&DipoleStrengths::nu),
            opt(&DipoleStrengths::kappa)};
}

ProblemSetup setup_of(const RunConfig& c, RunState& st) {
    return {fluid(c), side_of(c), c.a, c.epsilon, dipoles_for(c, st)};
}

const Row kTrappedHeader = {"beta", "b",     "k",      "side",      "a",     "epsilon",
                            "mu",   "nu",    "S",      "sigma",     "lambda", "threshold",
                            "omega", "D",    "order"};

Row row_trapped(const RunConfig& c, RunState& st) {
    const auto setup = setup_of(c, st);
    const auto ctx = spectral_context(setup.cfg);
    const auto r = setup.side == Side::upper ? trapped_upper(setup, ctx, c.g)
                                             : trapped_lower(setup, ctx, c.g);
    note(st, r.warnings);
    return {fmt(c.beta),  fmt(c.b),          fmt(c.k),        c.side,
            fmt(c.a),     fmt(c.epsilon),    fmt(setup.dip.mu), fmt(setup.dip.nu),
            fmt(setup.dip.S), fmt(r.sigma),  fmt(r.lambda),   fmt(r.threshold),
            fmt(r.omega), fmt(r.coeff.D),    r.order};
}

const Row kResonanceHeader = {"beta",     "b",        "k",     "side",          "a",
                              "epsilon",  "mu",       "nu",    "S",             "re_sigma",
                              "im_sigma", "log_im_sigma", "near_embedded", "Rcal", "Jcal",     "D",
                              "D1",       "decay_rate", "order"};

Row row_resonance(const RunConfig& c, RunState& st) {
    const auto setup = setup_of(c, st);
    const auto ctx = spectral_context(setup.cfg);
    const auto r = setup.side == Side::upper ? resonance_upper(setup, ctx, c.g)
                                             : resonance_lower(setup, ctx, c.g);
    note(st, r.warnings);
    return {fmt(c.beta),        fmt(c.b),          fmt(c.k),           c.side,
            fmt(c.a),           fmt(c.epsilon),    fmt(setup.dip.mu),  fmt(setup.dip.nu),
            fmt(setup.dip.S),   fmt(r.re_sigma),   fmt(r.im_sigma),    fmt(r.log_im_sigma), fmt(r.near_embedded),
            fmt(r.Rcal),        fmt(r.Jcal),       fmt(r.coeff.D),     fmt(r.coeff.D1),
            fmt(r.decay_rate),  r.order};
}

const Row kEmbeddedHeader = {"beta",  "alpha", "b",      "k",      "mu",     "nu",
                             "S",     "delta", "tau0",   "w",      "a0",     "b0",
                             "exists", "a_star", "a_star_root", "sigma", "diagnostic"};

Row row_embedded(const RunConfig& c, RunState& st) {
    const auto cfg = fluid(c);
    const auto dip = dipoles_for(c, st);
    if (!(c.epsilon > 0.0)) throw ValidationError("epsilon: must be positive");
    const auto ctx = spectral_context(cfg);
    const auto r = a_star(cfg, dip, ctx, c.epsilon);
    return {fmt(c.beta),  fmt(cfg.alpha()), fmt(c.b),      fmt(c.k),       fmt(dip.mu),
            fmt(dip.nu),  fmt(dip.S),       fmt(r.delta),  fmt(r.tau0),    fmt(r.w),
            fmt(r.a0),    fmt(r.b0),        fmt(r.exists), fmt(r.a_star),  fmt(r.a_star_root),
            fmt(r.sigma), csv_field(r.diagnostic)};
}

Table table_sweep_f(const RunConfig& c) {
    std::vector<double> grid;
    if (c.sweep) {
        if (c.sweep->param != "a") {
            throw ValidationError("sweep: the sweep command grids only 'a', got '" +
                                  c.sweep->param + "'");
        }
        grid = c.sweep->grid();
    } else {
        grid = SweepSpec{"a", 0.0, 1.0, 101}.grid();
    }
    for (double alpha : c.alphas) {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw ValidationError("alphas: " + fmt(alpha) + " is outside (0, 1)");
        }
    }
    Table t{{"alpha", "tau0", "a", "f", "has_root", "a_star"}, {}};
    for (const auto& row : sweep_f(c.alphas, grid)) {
        t.rows.push_back({fmt(row.alpha), fmt(row.tau0), fmt(row.a), fmt(row.f),
                          fmt(row.has_root), fmt(row.a_star)});
    }
    return t;
}

Table run_command(const RunConfig& c, RunState& st) {
    if (c.command == "sweep") return table_sweep_f(c);

    Row header;
    std::function<Row(const RunConfig&, RunState&)> row_fn;
    if (c.command == "cutoffs") {
        header = kCutoffsHeader;
        row_fn = row_cutoffs;
    } else if (c.command == "dipoles") {
        header = kDipolesHeader;
        row_fn = row_dipoles;
    } else if (c.command == "trapped") {
        header = kTrappedHeader;
        row_fn = row_trapped;
    } else if (c.command == "resonance") {
        header = kResonanceHeader;
        row_fn = row_resonance;
    } else if (c.command == "embedded") {
        header = kEmbeddedHeader;
        row_fn = row_embedded;
    } else {
        throw ValidationError("command: unknown '" + c.command + "'");
    }

    Table t;
    if (!c.sweep) {
        t.header = header;
        t.rows.push_back(row_fn(c, st));
        return t;
    }
    const auto& sw = *c.sweep;
    const bool echo = std::find(header.begin(), header.end(), sw.param) == header.end();
    t.header = header;
    if (echo) t.header.insert(t.header.begin(), sw.param);
    for (double v : sw.grid()) {
        RunConfig point = c;
        set_param(point, sw.param, v);
        Row row = row_fn(point, st);
        if (echo) row.insert(row.begin(), fmt(v));
        t.rows.push_back(std::move(row));
    }
    return t;
}

json spectral_json(const RunConfig& c) {
    const auto ctx = spectral_context(fluid(c));
    return {{"Lambda1", ctx.Lambda1}, {"Lambda2", ctx.Lambda2}, {"tau1", ctx.tau1},
            {"p1_zero", ctx.p1_zero}, {"q1", ctx.q1},           {"q2", ctx.q2},
            {"dlambda1_at_k", ctx.dlambda1_at_k},
            {"dlambda1_at_tau1", ctx.dlambda1_at_tau1}};
}

void write_csv(const std::filesystem::path& path, const Table& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("out: cannot write '" + path.string() + "'");
    auto line = [&out](const Row& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out << ',';
            out << r[i];
        }
        out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

struct OptionSet {
    std::map<std::string, CLI::Option*> by_key;
};

void add_fluid(CLI::App* sub, RunConfig& c, OptionSet& os) {
    os.by_key["beta"] = sub->add_option("--beta", c.beta, "density ratio rho1/rho2, 0 < beta < 1");
    os.by_key["b"] = sub->add_option("--b", c.b, "upper-layer depth");
    os.by_key["k"] = sub->add_option("--k", c.k, "along-cylinder wavenumber");
}

void add_problem(CLI::App* sub, RunConfig& c, OptionSet& os) {
    os.by_key["side"] = sub->add_option("--side", c.side, "U (upper layer) or L (lower layer)");
    os.by_key["a"] = sub->add_option("--a", c.a, "submergence of the cylinder centre");
    os.by_key["g"] = sub->add_option("--g", c.g, "gravitational acceleration for omega and decay");
}

void add_shape(CLI::App* sub, RunConfig& c, OptionSet& os) {
    os.by_key["shape"] = sub->add_option("--shape", c.shape, "circle, ellipse or fourier");
    os.by_key["r"] = sub->add_option("--r", c.r, "circle radius");
    os.by_key["a0"] = sub->add_option("--a0", c.a0, "ellipse semi-axis along x before rotation");
    os.by_key["b0"] = sub->add_option("--b0", c.b0, "ellipse semi-axis along y before rotation");
    os.by_key["theta0"] =
        sub->add_option("--theta0", c.theta0, "ellipse rotation angle (clockwise)");
    os.by_key["fourier-file"] = sub->add_option(
        "--fourier-file", c.fourier_file, "coefficient file: cos_x sin_x cos_y sin_y per line");
    os.by_key["N"] = sub->add_option("--N", c.N, "boundary-element node count (power of two)");
}

void add_epsilon(CLI::App* sub, RunConfig& c, OptionSet& os) {
    os.by_key["epsilon"] = sub->add_option("--epsilon", c.epsilon, "thinness parameter");
}

std::string columns_text(const Row& header) {
    std::string s = "CSV columns: ";
    for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
    return s;
}

}  // namespace

std::vector<double> SweepSpec::grid() const {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        // Endpoints exact; interior points by linear interpolation on the index.
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        v.push_back(i == count - 1 ? stop : start + f * (stop - start));
    }
    return v;
}

SweepSpec parse_sweep(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(item);
    if (parts.size() != 4 || parts[0].empty()) {
        throw ValidationError("sweep: expected param:start:stop:count, got '" + text + "'");
    }
    SweepSpec s{parts[0], parse_double(parts[1], "sweep start"),
                parse_double(parts[2], "sweep stop"), parse_int(parts[3], "sweep count")};
    if (!(s.start < s.stop)) throw ValidationError("sweep: start must be below stop");
    if (s.count < 2) throw ValidationError("sweep: count must be at least 2");
    return s;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot read '" + path.string() + "'");
    std::map<std::string, std::string> kv;

    if (path.extension() == ".json") {
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ValidationError("config: " + std::string(e.what()));
        }
        const json& src = j.contains("inputs") ? j.at("inputs") : j;
        if (!src.is_object()) throw ValidationError("config: expected a JSON object");
        for (const auto& [key, value] : src.items()) {
            if (value.is_null()) continue;
            if (value.is_string()) {
                kv[key] = value.get<std::string>();
            } else if (value.is_array()) {
                std::string list;
                for (const auto& x : value) list += (list.empty() ? "" : ",") + x.dump();
                kv[key] = list;
            } else {
                kv[key] = value.dump();
            }
        }
        return kv;
    }

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(line_no) +
                                  ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string config_path;
    std::string sweep_arg;
    std::string alphas_arg;

    CLI::App app{"Trapped modes and resonances of thin cylinders in a two-layer fluid "
                 "(leading-order formulas)"};
    app.set_version_flag("--version", std::string(TWOLAYER_VERSION));
    app.require_subcommand(1);

    std::map<std::string, OptionSet> options;
    auto add_sub = [&](const std::string& name, const std::string& desc, const Row& header) {
        auto* sub = app.add_subcommand(name, desc);
        sub->footer(columns_text(header));
        auto& os = options[name];
        sub->add_option("--config", config_path, "key = value file or run manifest (.json)");
        os.by_key["out"] = sub->add_option("--out", cfg.out, "output prefix for .csv and .manifest.json");
        os.by_key["sweep"] =
            sub->add_option("--sweep", sweep_arg, "param:start:stop:count, one row per value");
        return sub;
    };

    auto* s_cut = add_sub("cutoffs", "cut-offs, tau1 and near-threshold constants", kCutoffsHeader);
    add_fluid(s_cut, cfg, options["cutoffs"]);

    auto* s_dip = add_sub("dipoles", "boundary-element dipole strengths", kDipolesHeader);
    add_shape(s_dip, cfg, options["dipoles"]);

    auto* s_trap = add_sub("trapped", "trapped mode below Lambda1", kTrappedHeader);
    add_fluid(s_trap, cfg, options["trapped"]);
    add_problem(s_trap, cfg, options["trapped"]);
    add_epsilon(s_trap, cfg, options["trapped"]);
    add_shape(s_trap, cfg, options["trapped"]);

    auto* s_res = add_sub("resonance", "resonance near Lambda2 = k", kResonanceHeader);
    add_fluid(s_res, cfg, options["resonance"]);
    add_problem(s_res, cfg, options["resonance"]);
    add_epsilon(s_res, cfg, options["resonance"]);
    add_shape(s_res, cfg, options["resonance"]);

    auto* s_emb = add_sub("embedded", "submergence of the embedded trapped mode (side U)",
                          kEmbeddedHeader);
    add_fluid(s_emb, cfg, options["embedded"]);
    add_epsilon(s_emb, cfg, options["embedded"]);
    add_shape(s_emb, cfg, options["embedded"]);

    auto* s_sw = add_sub("sweep", "f(a) table for the unit circle at k = b = 1",
                         {"alpha", "tau0", "a", "f", "has_root", "a_star"});
    options["sweep"].by_key["alphas"] =
        s_sw->add_option("--alphas", alphas_arg, "comma-separated alpha values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        cfg.command = app.get_subcommands().front()->get_name();
        auto& os = options[cfg.command];
        if (!sweep_arg.empty()) cfg.sweep = parse_sweep(sweep_arg);
        if (!alphas_arg.empty()) cfg.alphas = parse_list(alphas_arg, "alphas");

        // Flags given on the command line win over the file.
        if (!config_path.empty()) {
            for (const auto& [key, value] : read_config_file(config_path)) {
                if (key == "command") continue;
                const auto setter = setters().find(key);
                if (setter == setters().end()) {
                    throw ValidationError("config: unknown key '" + key + "'");
                }
                const auto opt = os.by_key.find(key);
                if (opt == os.by_key.end() || opt->second->count() == 0) {
                    setter->second(cfg, value);
                }
            }
        }

        RunState st;
        const Table table = run_command(cfg, st);

        json manifest;
        manifest["tool"] = "twolayer";
        manifest["version"] = TWOLAYER_VERSION;
        manifest["command"] = cfg.command;
        manifest["inputs"] = inputs_json(cfg);
        manifest["order"] = kLeadingOrder;
        if (cfg.command != "dipoles" && cfg.command != "sweep") {
            manifest["spectral_context"] = spectral_json(cfg);
        }
        if (cfg.command != "cutoffs" && cfg.command != "sweep") {
            const auto d = dipoles_for(cfg, st);
            manifest["dipoles"] = {{"mu", d.mu},       {"nu", d.nu},
                                   {"kappa", d.kappa}, {"S", d.S},
                                   {"delta", d.delta()},
                                   {"source", cfg.shape == "fourier" ? "bem" : "analytic"}};
        }
        if (st.bem) {
            manifest["bem"] = {{"N", st.bem->n},
                               {"gauss_residual", st.bem->gauss_residual},
                               {"condition_estimate", st.bem->condition_estimate},
                               {"nu_route_gap", st.bem->nu_route_gap}};
        }
        manifest["warnings"] = std::vector<std::string>(st.warnings.begin(), st.warnings.end());
        manifest["columns"] = table.header;
        manifest["rows"] = table.rows.size();
        const std::string csv_path = cfg.out + ".csv";
        manifest["csv"] = std::filesystem::path(csv_path).filename().string();
        manifest["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        write_csv(csv_path, table);
        std::ofstream mf(cfg.out + ".manifest.json", std::ios::binary);
        if (!mf) throw ValidationError("out: cannot write '" + cfg.out + ".manifest.json'");
        mf << manifest.dump(2) << '\n';

        for (const auto& w : st.warnings) err << "warning: " << w << '\n';
        out << "wrote " << csv_path << " (" << table.rows.size() << " rows)\n";
        return kExitOk;
    } catch (const ConsistencyError& e) {
        err << "internal consistency error: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitConsistency;
    }
}

}  // namespace twolayer::cli
