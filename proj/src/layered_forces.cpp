#include "ypfa/layered_forces.hpp"

#include <cmath>
#include <numbers>

namespace ypfa {

namespace {

constexpr double pi = std::numbers::pi;

// Below this t = r/lambda the shell moment is summed as a power series;
// above it the closed form no longer cancels.
constexpr double kShellSeriesLimit = 2.0;

// x^n - y^n for 0 <= y <= x, with dx = x - y known to full precision.
double power_difference(double x, double y, double dx, int n) {
    if (y == 0.0) return std::pow(x, n);
    return std::pow(x, n) * -std::expm1(n * std::log1p(-dx / x));
}

}  // namespace

double shell_moment(double r_lo, double r_hi, double r_out, double lambda) {
    if (r_hi <= r_lo) return 0.0;
    const double t_lo = r_lo / lambda;
    const double t_hi = r_hi / lambda;
    const double t_out = r_out / lambda;
    const double dt = (r_hi - r_lo) / lambda;

    if (t_hi <= kShellSeriesLimit) {
        // integral t sinh t dt = sum_k t^(2k+3) / ((2k+1)! (2k+3))
        double inv_fact = 1.0;  // 1/(2k+1)!
        CompensatedSum sum;
        for (int k = 0; k < 40; ++k) {
            if (k > 0) inv_fact /= (2.0 * k) * (2.0 * k + 1.0);
            const int n = 2 * k + 3;
            const double term = power_difference(t_hi, t_lo, dt, n) * inv_fact / n;
            sum += term;
            if (term <= 1e-19 * sum.value()) break;
        }
        return std::exp(-t_out) * sum.value();
    }

    // integral t sinh t dt = [(t-1) e^t + (t+1) e^-t] / 2, each half written
    // as a difference that cannot overflow once multiplied by e^-t_out.
    const double growing = (t_hi - 1.0) * std::exp(t_hi - t_out) * one_minus_exp(dt) +
                           dt * std::exp(t_lo - t_out);
    const double decaying = std::exp(-t_lo - t_out) * ((t_hi + 1.0) * std::expm1(-dt) + dt);
    return 0.5 * (growing + decaying);
}

double slab_effective_density(const LayeredSlab& slab, double lambda) {
    CompensatedSum sum;
    double depth = 0.0;
    for (const Layer* layer : {&slab.top, &slab.middle, &slab.base}) {
        if (layer->present()) {
            sum += layer->density * std::exp(-depth / lambda) * one_minus_exp(layer->thickness / lambda);
        }
        depth += layer->thickness;
    }
    return sum.value();
}

double layered_slab_potential(double z, const LayeredSlab& slab, const YukawaParams& p,
                              const PhysicalConstants& c) {
    if (!(std::isfinite(z) && z > 0.0)) throw InputError("height z above the slab must be > 0");
    validate(slab);
    validate(p);
    const double l = p.lambda;
    return -2.0 * pi * p.alpha * c.G * l * l * std::exp(-z / l) * slab_effective_density(slab, l);
}

ForceValue layered_epfa_energy(const LayeredConfig& cfg, const YukawaParams& p,
                               const PhysicalConstants& c) {
    validate(cfg);
    validate(p);
    const double l = p.lambda;
    const auto& s = cfg.sphere;
    const double r_core = s.core_radius;
    const double r_inner = r_core + s.inner_coat.thickness;
    const double r_out = s.outer_radius();

    CompensatedSum shells;
    shells += s.core_density * shell_moment(0.0, r_core, r_out, l);
    if (s.inner_coat.present()) shells += s.inner_coat.density * shell_moment(r_core, r_inner, r_out, l);
    if (s.outer_coat.present()) shells += s.outer_coat.density * shell_moment(r_inner, r_out, r_out, l);

    const double l5 = l * l * l * l * l;
    const double mantissa =
        -8.0 * pi * pi * p.alpha * c.G * l5 * slab_effective_density(cfg.slab, l) * shells.value();
    return {mantissa, -cfg.separation / l};
}

ForceValue layered_epfa_force(const LayeredConfig& cfg, const YukawaParams& p,
                              const PhysicalConstants& c) {
    return layered_epfa_energy(cfg, p, c).scaled(1.0 / p.lambda);
}

PfaTermMatrix layered_pfa_terms(const LayeredConfig& cfg, const YukawaParams& p,
                                const PhysicalConstants& c) {
    validate(cfg);
    validate(p);
    const double l = p.lambda;
    const auto& slab = cfg.slab;
    const auto& sph = cfg.sphere;

    struct Film {
        double density;
        double attenuation;  // 1 - exp(-t/lambda); 0 for an absent film
        double depth;        // distance from the facing surface
    };
    const auto film = [l](const Layer& layer, double depth) {
        return Film{layer.density, layer.present() ? one_minus_exp(layer.thickness / l) : 0.0, depth};
    };
    const std::array<Film, 3> slab_films = {
        film(slab.base, slab.top.thickness + slab.middle.thickness),
        film(slab.middle, slab.top.thickness),
        film(slab.top, 0.0),
    };
    const std::array<Film, 3> plate_films = {
        Film{sph.core_density, cfg.d2.attenuation(l), sph.outer_coat.thickness + sph.inner_coat.thickness},
        film(sph.inner_coat, sph.outer_coat.thickness),
        film(sph.outer_coat, 0.0),
    };

    const double prefactor = -4.0 * pi * pi * p.alpha * c.G * l * l * l * sph.core_radius;
    PfaTermMatrix terms{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const auto& f1 = slab_films[i];
            const auto& f2 = plate_films[j];
            double m = 0.0;
            if (f1.attenuation != 0.0 && f2.attenuation != 0.0) {
                m = prefactor * f1.density * f2.density * std::exp(-(f1.depth + f2.depth) / l) *
                    f1.attenuation * f2.attenuation;
            }
            terms[i][j] = ForceValue{m, -cfg.separation / l};
        }
    }
    return terms;
}

ForceValue layered_pfa_force(const LayeredConfig& cfg, const YukawaParams& p,
                             const PhysicalConstants& c) {
    const auto terms = layered_pfa_terms(cfg, p, c);
    CompensatedSum sum;
    for (const auto& row : terms) {
        for (const auto& t : row) sum += t.mantissa;
    }
    return {sum.value(), -cfg.separation / p.lambda};
}

EtaDeltaResult eta_delta(const LayeredConfig& cfg, const YukawaParams& p, const PhysicalConstants& c) {
    const double layered = ratio(layered_epfa_force(cfg, p, c), layered_pfa_force(cfg, p, c));
    const double homogeneous = eta(cfg.sphere.outer_radius(), cfg.d2, p.lambda).eta;
    return {layered, homogeneous, layered / homogeneous};
}

}  // namespace ypfa
