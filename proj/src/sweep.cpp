#include "ypfa/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include <fmt/format.h>

#include "ypfa/core_model.hpp"

namespace ypfa {

void validate(const SweepGrid& g) {
    if (g.points < 1) throw InputError("grid needs at least one point");
    if (!std::isfinite(g.min) || !std::isfinite(g.max)) throw InputError("grid bounds must be finite");
    if (g.points > 1 && !(g.min < g.max)) throw InputError("grid min must be < max when points > 1");
    if (g.spacing == Spacing::log && !(g.min > 0.0)) throw InputError("log-spaced grid needs min > 0");
}

std::vector<double> grid_values(const SweepGrid& g) {
    validate(g);
    if (g.points == 1) return {g.min};
    std::vector<double> v(g.points);
    const double last = static_cast<double>(g.points - 1);
    if (g.spacing == Spacing::log) {
        const double lo = std::log(g.min);
        const double span = std::log(g.max) - lo;
        for (std::size_t i = 0; i < g.points; ++i) v[i] = std::exp(lo + span * (static_cast<double>(i) / last));
    } else {
        for (std::size_t i = 0; i < g.points; ++i) {
            v[i] = g.min + (g.max - g.min) * (static_cast<double>(i) / last);
        }
    }
    v.front() = g.min;
    v.back() = g.max;
    return v;
}

std::string describe(const SweepGrid& g) {
    return fmt::format("{} {:.11e}..{:.11e} x {}", g.spacing == Spacing::log ? "log" : "linear", g.min, g.max,
                       g.points);
}

int default_workers() {
    const char* env = std::getenv("YPFA_WORKERS");
    if (!env || !*env) return 1;
    int n = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
    if (ec != std::errc{} || *ptr != '\0' || n < 1) {
        throw InputError(fmt::format("YPFA_WORKERS must be a positive integer, got '{}'", env));
    }
    return n;
}

}  // namespace ypfa
