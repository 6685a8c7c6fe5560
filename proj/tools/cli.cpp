#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "ypfa/config.hpp"
#include "ypfa/finite_disk.hpp"
#include "ypfa/layered_forces.hpp"
#include "ypfa/limits.hpp"
#include "ypfa/sweep.hpp"
#include "ypfa/verification.hpp"
#include "ypfa/yukawa_forces.hpp"

#ifndef YPFA_VERSION
#define YPFA_VERSION "0.0.0"
#endif

namespace ypfa::cli {

namespace {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::string output;
    std::string preset;
    std::string method = "pfa";
    std::string d2;
    std::string residuals;
    std::string lambda_min;
    std::string lambda_max;
    std::optional<long> lambda_points;
    std::optional<int> workers;
};

using Entries = std::vector<std::pair<std::string, std::string>>;

const Entries kLayeredStack = {
    {"sphere.core_density", "4.1 g/cm3"},
    {"sphere.inner_coat.thickness", "10 nm"},
    {"sphere.inner_coat.density", "7.14 g/cm3"},
    {"sphere.outer_coat.thickness", "180 nm"},
    {"sphere.outer_coat.density", "19.28 g/cm3"},
    {"slab.base.thickness", "3.5 um"},
    {"slab.base.density", "2.33 g/cm3"},
    {"slab.middle.thickness", "10 nm"},
    {"slab.middle.density", "7.14 g/cm3"},
    {"slab.top.thickness", "210 nm"},
    {"slab.top.density", "19.28 g/cm3"},
};

const Entries kLambdaGrid = {
    {"grid.min", "1 nm"},
    {"grid.max", "1 mm"},
    {"grid.points", "200"},
    {"grid.spacing", "log"},
};

const Entries kDiskProbe = {
    {"sphere.core_radius", "150 um"},
    {"separation", "100 nm"},
    {"disk.thickness", "3.5 um"},
};

Entries join(std::initializer_list<Entries> parts) {
    Entries out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

struct Preset {
    std::string command;
    Entries entries;
};

const std::map<std::string, Preset>& presets() {
    static const std::map<std::string, Preset> table = {
        {"fig2-left", {"eta-sweep", join({kLambdaGrid, {{"sweep.radii", "50 um, 100 um, 150 um"}, {"sweep.d2", "inf"}}})}},
        {"fig2-right",
         {"eta-sweep", join({kLambdaGrid, {{"sweep.radii", "150 um"}, {"sweep.d2", "0.1 um, 1 um, 10 um, 100 um"}}})}},
        {"fig3-left",
         {"eta-layered-sweep",
          join({kLambdaGrid, kLayeredStack, {{"sweep.radii", "50 um, 100 um, 150 um"}, {"sweep.d2", "1e8 um"}}})}},
        {"fig3-right",
         {"eta-layered-sweep",
          join({kLambdaGrid, kLayeredStack, {{"sweep.radii", "150 um"}, {"sweep.d2", "1 um, 10 um, 100 um, 1e8 um"}}})}},
        {"fig4-left",
         {"xi-power-sweep",
          join({kDiskProbe,
                {{"xi.mode", "rd"},
                 {"xi.exponents", "1, 2, 3, 4"},
                 {"grid.min", "150 um"},
                 {"grid.max", "150 mm"},
                 {"grid.points", "200"},
                 {"grid.spacing", "log"}}})}},
        {"fig4-right",
         {"xi-power-sweep",
          join({kDiskProbe,
                {{"xi.mode", "n"},
                 {"xi.disk_radii", "150 um, 300 um, 1.5 mm, 15 mm"},
                 {"grid.min", "0.5"},
                 {"grid.max", "4"},
                 {"grid.points", "200"},
                 {"grid.spacing", "linear"}}})}},
        {"fig5",
         {"xi-yukawa-sweep",
          join({kDiskProbe,
                {{"yukawa.lambdas", "100 um, 500 um, 1000 um"},
                 {"grid.min", "150 um"},
                 {"grid.max", "150 mm"},
                 {"grid.points", "200"},
                 {"grid.spacing", "log"}}})}},
    };
    return table;
}

const std::vector<std::string> kKnownKeys = {
    "constants.G",
    "separation",
    "sphere.core_radius",
    "sphere.core_density",
    "sphere.inner_coat.thickness",
    "sphere.inner_coat.density",
    "sphere.outer_coat.thickness",
    "sphere.outer_coat.density",
    "slab.base.thickness",
    "slab.base.density",
    "slab.middle.thickness",
    "slab.middle.density",
    "slab.top.thickness",
    "slab.top.density",
    "pfa.d2",
    "sweep.radii",
    "sweep.d2",
    "disk.radius",
    "disk.thickness",
    "disk.density",
    "xi.mode",
    "xi.exponents",
    "xi.disk_radii",
    "yukawa.lambdas",
    "grid.min",
    "grid.max",
    "grid.points",
    "grid.spacing",
    "layered.radius_is_outer",
    "limits.residuals",
    "limits.geometry",
    "verify.tolerance",
    "verify.perturb",
    "oracle.rel_tol",
    "oracle.abs_tol",
    "oracle.max_subdivisions",
};

bool sweeps_lambda(const std::string& cmd) {
    return cmd == "eta-sweep" || cmd == "eta-layered-sweep" || cmd == "limits";
}

Config resolve(const std::string& cmd, const Options& o) {
    Config cfg;
    if (!o.preset.empty()) {
        const auto it = presets().find(o.preset);
        if (it == presets().end()) throw InputError(fmt::format("unknown preset '{}'", o.preset));
        if (it->second.command != cmd) {
            throw InputError(fmt::format("preset '{}' belongs to {}, not {}", o.preset, it->second.command, cmd));
        }
        for (const auto& [k, v] : it->second.entries) cfg.set(k, v, "preset " + o.preset);
    }
    if (!o.config_path.empty()) cfg.merge(Config::load(o.config_path));

    const bool lambda_flags = !o.lambda_min.empty() || !o.lambda_max.empty() || o.lambda_points.has_value();
    if (lambda_flags && !sweeps_lambda(cmd)) {
        throw InputError(fmt::format("--lambda-min/--lambda-max/--lambda-points do not apply to {}", cmd));
    }
    if (!o.lambda_min.empty()) cfg.set("grid.min", o.lambda_min, "--lambda-min");
    if (!o.lambda_max.empty()) cfg.set("grid.max", o.lambda_max, "--lambda-max");
    if (o.lambda_points) cfg.set("grid.points", std::to_string(*o.lambda_points), "--lambda-points");
    if (!o.d2.empty()) {
        if (cmd == "eta-sweep" || cmd == "eta-layered-sweep") {
            cfg.set("sweep.d2", o.d2, "--d2");
        } else if (cmd == "limits") {
            cfg.set("pfa.d2", o.d2, "--d2");
        } else {
            throw InputError(fmt::format("--d2 does not apply to {}", cmd));
        }
    }
    if (!o.residuals.empty()) cfg.set("limits.residuals", o.residuals, "--residuals");
    cfg.require_known(kKnownKeys);
    return cfg;
}

template <class T>
T required(const std::optional<T>& v, const std::string& key) {
    if (!v) throw InputError(fmt::format("missing required key '{}'", key));
    return *v;
}

PhysicalConstants constants_of(const Config& cfg) {
    PhysicalConstants c;
    if (auto g = cfg.number("constants.G")) c.G = *g;
    validate(c);
    return c;
}

std::size_t count_of(const Config& cfg, const std::string& key, std::size_t fallback) {
    const auto v = cfg.number(key);
    if (!v) return fallback;
    if (!(*v >= 1.0 && *v == std::floor(*v) && *v < 1e8)) {
        throw InputError(fmt::format("{} must be a positive integer", key));
    }
    return static_cast<std::size_t>(*v);
}

Spacing spacing_of(const Config& cfg, Spacing fallback) {
    const auto s = cfg.text("grid.spacing");
    if (!s) return fallback;
    if (*s == "log") return Spacing::log;
    if (*s == "linear") return Spacing::linear;
    throw InputError(fmt::format("grid.spacing must be 'log' or 'linear', got '{}'", *s));
}

// Grid whose bounds are lengths (lambda or Rd).
SweepGrid length_grid(const Config& cfg, const SweepGrid& fallback) {
    SweepGrid g = fallback;
    if (auto v = cfg.length("grid.min")) g.min = *v;
    if (auto v = cfg.length("grid.max")) g.max = *v;
    g.points = count_of(cfg, "grid.points", fallback.points);
    g.spacing = spacing_of(cfg, fallback.spacing);
    validate(g);
    return g;
}

SweepGrid number_grid(const Config& cfg, const SweepGrid& fallback) {
    SweepGrid g = fallback;
    if (auto v = cfg.number("grid.min")) g.min = *v;
    if (auto v = cfg.number("grid.max")) g.max = *v;
    g.points = count_of(cfg, "grid.points", fallback.points);
    g.spacing = spacing_of(cfg, fallback.spacing);
    validate(g);
    return g;
}

const SweepGrid kDefaultLambdaGrid{1e-9, 1e-3, 200, Spacing::log};

int workers_of(const Options& o) {
    const int w = o.workers ? *o.workers : default_workers();
    if (w < 1) throw InputError("--workers must be >= 1");
    return w;
}

std::string num(double v) { return fmt::format("{:.11e}", v); }

std::string thickness_text(const MetaphysicalThickness& t) { return t.is_infinite() ? "inf" : num(t.value()); }

Json thickness_json(const MetaphysicalThickness& t) {
    return t.is_infinite() ? Json("inf") : Json(t.value());
}

Json grid_json(const SweepGrid& g, const std::string& variable) {
    return Json{{"variable", variable},
                {"min", g.min},
                {"max", g.max},
                {"points", g.points},
                {"spacing", g.spacing == Spacing::log ? "log" : "linear"}};
}

Json entries_json(const Config& cfg) {
    Json j = Json::object();
    for (const auto& [k, e] : cfg.entries()) j[k] = Json{{"value", e.value}, {"origin", e.origin}};
    return j;
}

std::string timestamp() {
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(fmt::format("cannot open '{}' for writing", path));
    f << body;
    f.flush();
    if (!f) throw IoError(fmt::format("failed writing '{}'", path));
}

struct RunResult {
    std::string csv;
    Json manifest;  // subcommand-specific part
};

void emit(const std::string& cmd, const Options& o, const Config& cfg, RunResult r) {
    if (o.output.empty()) throw InputError("--output is required");
    write_file(o.output, r.csv);
    Json m;
    m["subcommand"] = cmd;
    m["version"] = YPFA_VERSION;
    m["preset"] = o.preset.empty() ? Json(nullptr) : Json(o.preset);
    m["config_entries"] = entries_json(cfg);
    for (auto& [k, v] : r.manifest.items()) m[k] = v;
    m["timestamp"] = timestamp();
    write_file(o.output + ".manifest.json", m.dump(2) + "\n");
}

SphereSlabConfig homogeneous_of(const Config& cfg) {
    SphereSlabConfig s;
    s.separation = cfg.length("separation").value_or(100e-9);
    s.sphere_radius = required(cfg.length("sphere.core_radius"), "sphere.core_radius");
    s.sphere_density = required(cfg.density("sphere.core_density"), "sphere.core_density");
    s.slab_thickness = required(cfg.length("slab.base.thickness"), "slab.base.thickness");
    s.slab_density = required(cfg.density("slab.base.density"), "slab.base.density");
    validate(s);
    return s;
}

Layer layer_of(const Config& cfg, const std::string& prefix, bool required_layer) {
    Layer l;
    if (required_layer) {
        l.thickness = required(cfg.length(prefix + ".thickness"), prefix + ".thickness");
        l.density = required(cfg.density(prefix + ".density"), prefix + ".density");
    } else {
        l.thickness = cfg.length(prefix + ".thickness").value_or(0.0);
        l.density = cfg.density(prefix + ".density").value_or(0.0);
    }
    return l;
}

// Everything but the core radius, which the sweeps supply.
LayeredConfig layered_of(const Config& cfg) {
    LayeredConfig l;
    l.separation = cfg.length("separation").value_or(100e-9);
    l.sphere.core_radius = cfg.length("sphere.core_radius").value_or(0.0);
    l.sphere.core_density = required(cfg.density("sphere.core_density"), "sphere.core_density");
    l.sphere.inner_coat = layer_of(cfg, "sphere.inner_coat", false);
    l.sphere.outer_coat = layer_of(cfg, "sphere.outer_coat", false);
    l.slab.base = layer_of(cfg, "slab.base", true);
    l.slab.middle = layer_of(cfg, "slab.middle", false);
    l.slab.top = layer_of(cfg, "slab.top", false);
    l.d2 = cfg.thickness("pfa.d2").value_or(MetaphysicalThickness::infinite());
    return l;
}

Json layered_json(const LayeredConfig& l) {
    const auto layer = [](const Layer& x) { return Json{{"thickness_m", x.thickness}, {"density_kg_m3", x.density}}; };
    return Json{{"separation_m", l.separation},
                {"sphere",
                 {{"core_density_kg_m3", l.sphere.core_density},
                  {"inner_coat", layer(l.sphere.inner_coat)},
                  {"outer_coat", layer(l.sphere.outer_coat)}}},
                {"slab", {{"base", layer(l.slab.base)}, {"middle", layer(l.slab.middle)}, {"top", layer(l.slab.top)}}}};
}

Json thickness_list_json(const std::vector<MetaphysicalThickness>& v) {
    Json j = Json::array();
    for (const auto& t : v) j.push_back(thickness_json(t));
    return j;
}

// ---- eta-sweep ---------------------------------------------------------------

RunResult eta_sweep(const Config& cfg, int workers) {
    const auto radii = required(cfg.length_list("sweep.radii"), "sweep.radii");
    const auto d2s = cfg.thickness_list("sweep.d2").value_or(std::vector{MetaphysicalThickness::infinite()});
    const SweepGrid grid = length_grid(cfg, kDefaultLambdaGrid);
    for (double r : radii) {
        if (!(r > 0.0)) throw InputError("sweep.radii: radii must be > 0");
    }

    struct Item {
        double lambda, radius;
        MetaphysicalThickness d2;
    };
    std::vector<Item> items;
    const auto lambdas = grid_values(grid);
    for (double r : radii) {
        for (const auto& d2 : d2s) {
            for (double l : lambdas) items.push_back({l, r, d2});
        }
    }
    const auto results = map_parallel(items, [](const Item& it) { return eta(it.radius, it.d2, it.lambda); }, workers);

    RunResult out;
    out.csv = "lambda_m,R_m,D2_m,eta,regime\n";
    std::map<std::string, int> regimes{{"series", 0}, {"direct", 0}};
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& it = items[i];
        const char* regime = to_string(results[i].regime);
        ++regimes[regime];
        out.csv += fmt::format("{},{},{},{},{}\n", num(it.lambda), num(it.radius), thickness_text(it.d2),
                               num(results[i].eta), regime);
    }
    out.manifest["resolved"] = {{"radii_m", radii}, {"d2_m", thickness_list_json(d2s)}};
    out.manifest["grid"] = grid_json(grid, "lambda_m");
    out.manifest["rows"] = items.size();
    out.manifest["regime_counts"] = regimes;
    return out;
}

// ---- eta-layered-sweep -----------------------------------------------------

RunResult eta_layered_sweep(const Config& cfg, int workers) {
    const auto radii = required(cfg.length_list("sweep.radii"), "sweep.radii");
    const auto d2s = cfg.thickness_list("sweep.d2").value_or(std::vector{MetaphysicalThickness::infinite()});
    const bool radius_is_outer = cfg.boolean("layered.radius_is_outer").value_or(false);
    const SweepGrid grid = length_grid(cfg, kDefaultLambdaGrid);
    const PhysicalConstants c = constants_of(cfg);
    const LayeredConfig base = layered_of(cfg);
    const double coats = base.sphere.inner_coat.thickness + base.sphere.outer_coat.thickness;
    for (double r : radii) {
        if (!(r > 0.0) || (radius_is_outer && !(r > coats))) {
            throw InputError(radius_is_outer ? "sweep.radii: outer radii must exceed the coating thickness"
                                             : "sweep.radii: radii must be > 0");
        }
    }

    struct Item {
        double lambda, radius;
        MetaphysicalThickness d2;
    };
    std::vector<Item> items;
    const auto lambdas = grid_values(grid);
    for (double r : radii) {
        for (const auto& d2 : d2s) {
            for (double l : lambdas) items.push_back({l, r, d2});
        }
    }
    const auto results = map_parallel(
        items,
        [&](const Item& it) {
            LayeredConfig lc = base;
            lc.sphere.core_radius = radius_is_outer ? it.radius - coats : it.radius;
            lc.d2 = it.d2;
            return eta_delta(lc, {1.0, it.lambda}, c);
        },
        workers);

    RunResult out;
    out.csv = "lambda_m,R_m,D2_m,eta_delta,eta,ratio\n";
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& it = items[i];
        const auto& r = results[i];
        out.csv += fmt::format("{},{},{},{},{},{}\n", num(it.lambda), num(it.radius), thickness_text(it.d2),
                               num(r.eta_delta), num(r.eta_homogeneous), num(r.ratio));
    }
    out.manifest["resolved"] = {{"radii_m", radii},
                                {"radius_is_outer", radius_is_outer},
                                {"d2_m", thickness_list_json(d2s)},
                                {"G", c.G},
                                {"layers", layered_json(base)}};
    out.manifest["grid"] = grid_json(grid, "lambda_m");
    out.manifest["rows"] = items.size();
    return out;
}

// ---- xi sweeps -------------------------------------------------------------

XiInputs xi_base(const Config& cfg) {
    XiInputs x;
    x.R = cfg.length("sphere.core_radius").value_or(150e-6);
    x.a = cfg.length("separation").value_or(100e-9);
    x.disk.thickness = cfg.length("disk.thickness").value_or(3.5e-6);
    x.disk.density = 1.0;
    x.disk.radius = x.R;
    validate(x);
    return x;
}

RunResult xi_power_sweep(const Config& cfg, int workers) {
    const std::string mode = cfg.text("xi.mode").value_or("rd");
    const XiInputs base = xi_base(cfg);

    struct Item {
        double rd, n;
    };
    std::vector<Item> items;
    SweepGrid grid;
    Json resolved;
    if (mode == "rd") {
        const auto exponents = required(cfg.number_list("xi.exponents"), "xi.exponents");
        for (double n : exponents) validate(PowerLawParams{1.0, n});
        grid = length_grid(cfg, {base.R, 1000.0 * base.R, 200, Spacing::log});
        const auto rds = grid_values(grid);
        for (double n : exponents) {
            for (double rd : rds) items.push_back({rd, n});
        }
        resolved["exponents"] = exponents;
    } else if (mode == "n") {
        const auto radii = required(cfg.length_list("xi.disk_radii"), "xi.disk_radii");
        grid = number_grid(cfg, {0.5, 4.0, 200, Spacing::linear});
        if (!(grid.min > 0.0)) throw InputError("exponent grid must stay above N = 0");
        const auto ns = grid_values(grid);
        for (double rd : radii) {
            if (!(rd > 0.0)) throw InputError("xi.disk_radii: radii must be > 0");
            for (double n : ns) items.push_back({rd, n});
        }
        resolved["disk_radii_m"] = radii;
    } else {
        throw InputError(fmt::format("xi.mode must be 'rd' or 'n', got '{}'", mode));
    }
    resolved["sphere_radius_m"] = base.R;
    resolved["separation_m"] = base.a;
    resolved["disk_thickness_m"] = base.disk.thickness;

    struct Row {
        double xi = 0.0;
        bool pole = false;
    };
    const auto rows = map_parallel(
        items,
        [&](const Item& it) {
            XiInputs x = base;
            x.disk.radius = it.rd;
            try {
                return Row{xi_power(x, it.n), false};
            } catch (const NumericalRegimeError&) {
                return Row{std::nan(""), true};
            }
        },
        workers);

    RunResult out;
    out.csv = mode == "rd" ? "Rd_m,N,xi\n" : "N,Rd_m,xi\n";
    Json flagged = Json::array();
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& it = items[i];
        if (mode == "rd") {
            out.csv += fmt::format("{},{},{}\n", num(it.rd), num(it.n), num(rows[i].xi));
        } else {
            out.csv += fmt::format("{},{},{}\n", num(it.n), num(it.rd), num(rows[i].xi));
        }
        if (rows[i].pole) {
            flagged.push_back({{"row", i + 1}, {"N", it.n}, {"Rd_m", it.rd}, {"reason", "exponent next to a pole"}});
        }
    }
    out.manifest["resolved"] = resolved;
    out.manifest["mode"] = mode;
    out.manifest["grid"] = grid_json(grid, mode == "rd" ? "Rd_m" : "N");
    out.manifest["rows"] = items.size();
    out.manifest["flagged_rows"] = flagged;
    return out;
}

RunResult xi_yukawa_sweep(const Config& cfg, int workers) {
    const auto lambdas = required(cfg.length_list("yukawa.lambdas"), "yukawa.lambdas");
    for (double l : lambdas) {
        if (!(l > 0.0)) throw InputError("yukawa.lambdas: ranges must be > 0");
    }
    const XiInputs base = xi_base(cfg);
    const SweepGrid grid = length_grid(cfg, {base.R, 1000.0 * base.R, 200, Spacing::log});

    struct Item {
        double rd, lambda;
    };
    std::vector<Item> items;
    for (double l : lambdas) {
        for (double rd : grid_values(grid)) items.push_back({rd, l});
    }
    const auto rows = map_parallel(
        items,
        [&](const Item& it) {
            XiInputs x = base;
            x.disk.radius = it.rd;
            return xi_yukawa(x, {1.0, it.lambda}).ln_value;
        },
        workers);

    RunResult out;
    out.csv = "Rd_m,lambda_m,ln_xi\n";
    for (std::size_t i = 0; i < items.size(); ++i) {
        out.csv += fmt::format("{},{},{}\n", num(items[i].rd), num(items[i].lambda), num(rows[i]));
    }
    out.manifest["resolved"] = {{"lambdas_m", lambdas},
                                {"sphere_radius_m", base.R},
                                {"separation_m", base.a},
                                {"disk_thickness_m", base.disk.thickness}};
    out.manifest["grid"] = grid_json(grid, "Rd_m");
    out.manifest["rows"] = items.size();
    return out;
}

// ---- limits ------------------------------------------------------------------

RunResult limits(const Config& cfg, const Options& o, int workers) {
    const std::string path = required(cfg.text("limits.residuals"), "limits.residuals (or --residuals)");
    const ResidualBound bounds = load_residuals(path);
    const LimitMethod method = parse_method(o.method);
    const SweepGrid grid = length_grid(cfg, kDefaultLambdaGrid);
    const PhysicalConstants c = constants_of(cfg);
    const auto d2 = cfg.thickness("pfa.d2").value_or(MetaphysicalThickness::infinite());
    const std::string kind = cfg.text("limits.geometry").value_or("homogeneous");

    LimitGeometry geometry;
    Json resolved;
    if (kind == "homogeneous") {
        const HomogeneousGeometry h{homogeneous_of(cfg), d2};
        geometry = h;
        resolved = {{"geometry", kind},
                    {"sphere_radius_m", h.body.sphere_radius},
                    {"sphere_density_kg_m3", h.body.sphere_density},
                    {"slab_thickness_m", h.body.slab_thickness},
                    {"slab_density_kg_m3", h.body.slab_density}};
    } else if (kind == "layered") {
        LayeredConfig l = layered_of(cfg);
        l.sphere.core_radius = required(cfg.length("sphere.core_radius"), "sphere.core_radius");
        l.d2 = d2;
        validate(l);
        geometry = l;
        resolved = {{"geometry", kind}, {"core_radius_m", l.sphere.core_radius}, {"layers", layered_json(l)}};
    } else {
        throw InputError(fmt::format("limits.geometry must be 'homogeneous' or 'layered', got '{}'", kind));
    }
    resolved["d2_m"] = thickness_json(d2);
    resolved["G"] = c.G;
    resolved["residuals"] = path;
    resolved["residual_rows"] = bounds.entries.size();

    const auto points = exclusion_curve(grid, bounds, geometry, method, c, workers);
    std::vector<ExclusionPoint> reference;
    if (method == LimitMethod::epfa) reference = exclusion_curve(grid, bounds, geometry, LimitMethod::pfa, c, workers);

    RunResult out;
    out.csv = method == LimitMethod::epfa ? "lambda_m,alpha_bound,best_separation_m,method,shift_vs_pfa\n"
                                          : "lambda_m,alpha_bound,best_separation_m,method\n";
    std::size_t unreliable = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (p.lambda >= kPfaReliableBelow) ++unreliable;
        out.csv += fmt::format("{},{},{},{}", num(p.lambda), num(p.alpha_bound), num(p.best_separation),
                               to_string(p.method));
        if (method == LimitMethod::epfa) {
            out.csv += "," + num(std::exp(p.log_alpha_bound - reference[i].log_alpha_bound));
        }
        out.csv += '\n';
    }
    out.manifest["resolved"] = resolved;
    out.manifest["method"] = to_string(method);
    out.manifest["grid"] = grid_json(grid, "lambda_m");
    out.manifest["rows"] = points.size();
    out.manifest["pfa_unreliable"] = {{"lambda_at_least_m", kPfaReliableBelow}, {"rows", unreliable}};
    return out;
}

// ---- oracle-verify -----------------------------------------------------------

VerifyOptions verify_options(const Config& cfg, int workers) {
    VerifyOptions v;
    v.workers = workers;
    if (auto x = cfg.number("oracle.rel_tol")) v.quadrature.rel_tol = *x;
    if (auto x = cfg.number("oracle.abs_tol")) v.quadrature.abs_tol = *x;
    if (cfg.has("oracle.max_subdivisions")) {
        v.quadrature.max_subdivisions = count_of(cfg, "oracle.max_subdivisions", v.quadrature.max_subdivisions);
    }
    if (auto x = cfg.number("verify.tolerance")) v.tolerance = *x;
    if (auto p = cfg.text("verify.perturb")) {
        const auto colon = p->find(':');
        if (colon == std::string::npos || colon == 0) {
            throw InputError("verify.perturb must look like '<check group>:<factor>'");
        }
        v.perturb = Perturbation{p->substr(0, colon), parse_number(p->substr(colon + 1))};
    }
    validate(v);
    return v;
}

int oracle_verify(const Config& cfg, const Options& o, int workers, std::ostream& out, std::ostream& err) {
    const VerifyOptions v = verify_options(cfg, workers);
    const auto checks = run_all_checks(v);
    out << format_report(checks);
    if (!o.output.empty()) {
        RunResult r;
        r.csv = "check,group,kind,rel_error,tolerance,closed_form,oracle,converged,passed\n";
        std::size_t failed = 0;
        for (const auto& c : checks) {
            const char* kind = c.kind == CheckKind::agreement ? "agreement"
                               : c.kind == CheckKind::deviation ? "deviation"
                                                                : "info";
            r.csv += fmt::format("\"{}\",{},{},{},{},{},{},{},{}\n", c.name, c.group, kind, num(c.rel_error),
                                 num(c.tolerance), num(c.closed_form), num(c.oracle), c.converged ? 1 : 0,
                                 c.passed ? 1 : 0);
            if (!c.passed) ++failed;
        }
        r.manifest["resolved"] = {{"rel_tol", v.quadrature.rel_tol},
                                  {"abs_tol", v.quadrature.abs_tol},
                                  {"max_subdivisions", v.quadrature.max_subdivisions},
                                  {"tolerance_override", v.tolerance ? Json(*v.tolerance) : Json(nullptr)}};
        r.manifest["rows"] = checks.size();
        r.manifest["failed"] = failed;
        emit("oracle-verify", o, cfg, std::move(r));
    }
    if (all_passed(checks)) return kExitOk;
    for (const auto& c : checks) {
        if (!c.passed) err << "verification failed: " << c.name << '\n';
    }
    return kExitNumerical;
}

void add_common(CLI::App* sub, Options& o, bool lambda_grid) {
    sub->add_option("--config", o.config_path, "key = value configuration file");
    sub->add_option("--output", o.output, "CSV output path (a .manifest.json is written next to it)");
    sub->add_option("--preset", o.preset, "figure preset");
    sub->add_option("--workers", o.workers, "worker threads (default: YPFA_WORKERS or 1)");
    if (lambda_grid) {
        sub->add_option("--lambda-min", o.lambda_min, "smallest lambda, e.g. 1nm");
        sub->add_option("--lambda-max", o.lambda_max, "largest lambda");
        sub->add_option("--lambda-points", o.lambda_points, "number of lambda points");
    }
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : presets()) out.push_back(k);
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Yukawa forces in sphere-plane geometries: exact, PFA and EPFA", "ypfa"};
    app.require_subcommand(1);
    app.set_version_flag("--version", YPFA_VERSION);
    Options o;

    auto* eta_cmd = app.add_subcommand("eta-sweep", "eta = exact / PFA for a homogeneous sphere over lambda");
    add_common(eta_cmd, o, true);
    eta_cmd->add_option("--d2", o.d2, "metaphysical plate thickness (length or inf)");

    auto* layered_cmd = app.add_subcommand("eta-layered-sweep", "eta_Delta and eta_Delta / eta for coated bodies");
    add_common(layered_cmd, o, true);
    layered_cmd->add_option("--d2", o.d2, "metaphysical plate thickness (length or inf)");

    auto* xi_power_cmd = app.add_subcommand("xi-power-sweep", "xi_N for power-law forces over a finite disk");
    add_common(xi_power_cmd, o, false);

    auto* xi_yukawa_cmd = app.add_subcommand("xi-yukawa-sweep", "ln xi_Yu for Yukawa forces over a finite disk");
    add_common(xi_yukawa_cmd, o, false);

    auto* verify_cmd = app.add_subcommand("oracle-verify", "closed forms against adaptive quadrature");
    add_common(verify_cmd, o, false);

    auto* limits_cmd = app.add_subcommand("limits", "alpha-lambda exclusion curve from force residuals");
    add_common(limits_cmd, o, true);
    limits_cmd->add_option("--residuals", o.residuals, "CSV with header separation_m,residual_N");
    limits_cmd->add_option("--method", o.method, "pfa or epfa")->check(CLI::IsMember({"pfa", "epfa"}));
    limits_cmd->add_option("--d2", o.d2, "metaphysical plate thickness for PFA (length or inf)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        const CLI::App* sub = app.get_subcommands().front();
        const std::string cmd = sub->get_name();
        const Config cfg = resolve(cmd, o);
        const int workers = workers_of(o);
        if (cmd == "oracle-verify") return oracle_verify(cfg, o, workers, out, err);
        if (o.output.empty()) throw InputError("--output is required");
        RunResult r;
        if (cmd == "eta-sweep") r = eta_sweep(cfg, workers);
        if (cmd == "eta-layered-sweep") r = eta_layered_sweep(cfg, workers);
        if (cmd == "xi-power-sweep") r = xi_power_sweep(cfg, workers);
        if (cmd == "xi-yukawa-sweep") r = xi_yukawa_sweep(cfg, workers);
        if (cmd == "limits") r = limits(cfg, o, workers);
        emit(cmd, o, cfg, std::move(r));
        return kExitOk;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericalRegimeError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace ypfa::cli
