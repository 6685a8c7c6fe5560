#include "ypfa/limits.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>

#include <fmt/format.h>

#include "ypfa/config.hpp"
#include "ypfa/layered_forces.hpp"
#include "ypfa/yukawa_forces.hpp"

namespace ypfa {

const char* to_string(LimitMethod m) { return m == LimitMethod::pfa ? "pfa" : "epfa"; }

LimitMethod parse_method(const std::string& text) {
    if (text == "pfa") return LimitMethod::pfa;
    if (text == "epfa") return LimitMethod::epfa;
    throw InputError(fmt::format("method must be 'pfa' or 'epfa', got '{}'", text));
}

void validate(const ResidualBound& b) {
    if (b.entries.empty()) throw InputError("residual bound needs at least one entry");
    for (std::size_t i = 0; i < b.entries.size(); ++i) {
        const auto& e = b.entries[i];
        if (!(std::isfinite(e.separation) && e.separation > 0.0)) {
            throw InputError(fmt::format("residual entry {}: separation must be > 0", i + 1));
        }
        if (!(std::isfinite(e.residual) && e.residual >= 0.0)) {
            throw InputError(fmt::format("residual entry {}: residual must be >= 0", i + 1));
        }
        if (i > 0 && !(e.separation > b.entries[i - 1].separation)) {
            throw InputError(fmt::format("residual entry {}: separations must be strictly increasing", i + 1));
        }
    }
}

ResidualBound read_residuals(std::istream& in, const std::string& source_name) {
    ResidualBound b;
    std::string line;
    std::size_t number = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = fmt::format("{}:{}", source_name, number);
        if (!header) {
            if (line != "separation_m,residual_N") {
                throw InputError(fmt::format("{}: expected header 'separation_m,residual_N'", where));
            }
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw InputError(fmt::format("{}: expected two comma-separated values", where));
        }
        ResidualEntry e;
        try {
            e.separation = parse_number(line.substr(0, comma));
            e.residual = parse_number(line.substr(comma + 1));
        } catch (const InputError& err) {
            throw InputError(fmt::format("{}: {}", where, err.what()));
        }
        if (!(e.separation > 0.0)) throw InputError(fmt::format("{}: separation must be > 0", where));
        if (!(e.residual >= 0.0)) throw InputError(fmt::format("{}: residual must be >= 0", where));
        if (!b.entries.empty() && !(e.separation > b.entries.back().separation)) {
            throw InputError(fmt::format("{}: separations must be strictly increasing", where));
        }
        b.entries.push_back(e);
    }
    if (!header) throw InputError(fmt::format("{}: empty residual file", source_name));
    if (b.entries.empty()) throw InputError(fmt::format("{}: no residual rows", source_name));
    return b;
}

ResidualBound load_residuals(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(fmt::format("cannot open residual file '{}'", path.string()));
    return read_residuals(in, path.string());
}

ForceValue unit_alpha_force(double a, double lambda, const LimitGeometry& g, LimitMethod method,
                            const PhysicalConstants& c) {
    const YukawaParams unit{1.0, lambda};
    if (const auto* h = std::get_if<HomogeneousGeometry>(&g)) {
        SphereSlabConfig cfg = h->body;
        cfg.separation = a;
        return method == LimitMethod::pfa ? sphere_slab_force_pfa(cfg, h->d2, unit, c)
                                          : sphere_slab_force_exact(cfg, unit, c);
    }
    LayeredConfig cfg = std::get<LayeredConfig>(g);
    cfg.separation = a;
    return method == LimitMethod::pfa ? layered_pfa_force(cfg, unit, c) : layered_epfa_force(cfg, unit, c);
}

ExclusionPoint alpha_limit(double lambda, const ResidualBound& bounds, const LimitGeometry& g, LimitMethod method,
                           const PhysicalConstants& c) {
    if (!(std::isfinite(lambda) && lambda > 0.0)) throw InputError("lambda must be > 0");
    validate(bounds);
    ExclusionPoint best;
    best.lambda = lambda;
    best.method = method;
    bool found = false;
    for (const auto& e : bounds.entries) {
        const ForceValue f = unit_alpha_force(e.separation, lambda, g, method, c);
        if (f.mantissa == 0.0) continue;
        // alpha = residual / |F|, with the exp(log_scale) factor applied last so
        // that methods sharing a log_scale share its rounding.
        const double head = e.residual / std::abs(f.mantissa);
        const double log_alpha = std::log(head) - f.log_scale;
        if (!found || log_alpha < best.log_alpha_bound) {
            found = true;
            best.log_alpha_bound = log_alpha;
            best.alpha_bound = head * std::exp(-f.log_scale);
            best.best_separation = e.separation;
        }
    }
    if (!found) throw InputError("every unit-alpha force is zero (check densities); no limit can be set");
    return best;
}

std::vector<ExclusionPoint> exclusion_curve(const SweepGrid& lambda_grid, const ResidualBound& bounds,
                                            const LimitGeometry& g, LimitMethod method, const PhysicalConstants& c,
                                            int workers) {
    validate(bounds);
    const auto lambdas = grid_values(lambda_grid);
    return map_parallel(lambdas, [&](double l) { return alpha_limit(l, bounds, g, method, c); }, workers);
}

LimitShift limit_shift(double lambda, const LimitGeometry& g, MetaphysicalThickness d2, const PhysicalConstants& c) {
    if (!(std::isfinite(lambda) && lambda > 0.0)) throw InputError("lambda must be > 0");
    LimitShift out;
    out.pfa_unreliable = lambda >= kPfaReliableBelow;
    const YukawaParams unit{1.0, lambda};
    if (const auto* h = std::get_if<HomogeneousGeometry>(&g)) {
        out.ratio = 1.0 / eta(h->body.sphere_radius, d2, lambda).eta;
        return out;
    }
    LayeredConfig cfg = std::get<LayeredConfig>(g);
    cfg.d2 = d2;
    cfg.separation = lambda;  // eta_Delta does not depend on it
    out.ratio = 1.0 / eta_delta(cfg, unit, c).eta_delta;
    return out;
}

}  // namespace ypfa
