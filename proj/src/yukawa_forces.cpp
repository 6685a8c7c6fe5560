#include "ypfa/yukawa_forces.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

namespace ypfa {

namespace {

constexpr double pi = std::numbers::pi;

void require(bool ok, const char* msg) {
    if (!ok) throw InputError(msg);
}

}  // namespace

const char* to_string(EtaRegime r) {
    return r == EtaRegime::series_small_u ? "series" : "direct";
}

double sphere_shape_factor_series(double u) {
    // Coefficient of (-u)^k is (k-1)/(k+1)!; the recurrence carries u^k/(k+1)!.
    double power = u * u / 6.0;  // u^2 / 3!
    double sum = power;          // k = 2, (k-1) = 1
    for (int k = 3; k < 60; ++k) {
        power *= u / (k + 1);
        const double term = (k % 2 ? -1.0 : 1.0) * (k - 1) * power;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double sphere_shape_factor_direct(double u) {
    using quad = boost::multiprecision::cpp_bin_float_quad;
    const quad uq = u;
    const quad two_over_u = quad(2) / uq;
    const quad phi = quad(1) - two_over_u + exp(-uq) * (quad(1) + two_over_u);
    return static_cast<double>(phi);
}

ShapeFactor sphere_shape_factor(double u) {
    if (u < kShapeFactorSeriesThreshold) return {sphere_shape_factor_series(u), EtaRegime::series_small_u};
    return {sphere_shape_factor_direct(u), EtaRegime::direct};
}

double yukawa_pair_energy(double m1, double m2, double r, const YukawaParams& p,
                          const PhysicalConstants& c) {
    require(std::isfinite(r) && r > 0.0, "pair distance r must be > 0");
    validate(p);
    return -p.alpha * c.G * m1 * m2 * std::exp(-r / p.lambda) / r;
}

double slab_slab_pressure(double a, double d1, double rho1, MetaphysicalThickness d2, double rho2,
                          const YukawaParams& p, const PhysicalConstants& c) {
    require(std::isfinite(a) && a > 0.0, "gap a must be > 0");
    require(d1 >= 0.0, "slab thickness must be >= 0");
    validate(p);
    const double l = p.lambda;
    if (d1 == 0.0) return 0.0;
    return -2.0 * pi * p.alpha * c.G * rho1 * rho2 * l * l * std::exp(-a / l) *
           one_minus_exp(d1 / l) * d2.attenuation(l);
}

double slab_slab_energy_per_area(double a, double d1, double rho1, MetaphysicalThickness d2,
                                 double rho2, const YukawaParams& p, const PhysicalConstants& c) {
    return p.lambda * slab_slab_pressure(a, d1, rho1, d2, rho2, p, c);
}

namespace {

// -4 pi^2 alpha G rho1 rho2 lambda^3 R (1 - exp(-D1/lambda)): the factor the
// exact and PFA sphere-slab forces share.
double sphere_slab_prefactor(const SphereSlabConfig& cfg, const YukawaParams& p, const PhysicalConstants& c) {
    const double l = p.lambda;
    return -4.0 * pi * pi * p.alpha * c.G * cfg.slab_density * cfg.sphere_density * l * l * l *
           cfg.sphere_radius * one_minus_exp(cfg.slab_thickness / l);
}

}  // namespace

ForceValue sphere_slab_force_exact(const SphereSlabConfig& cfg, const YukawaParams& p,
                                   const PhysicalConstants& c) {
    validate(cfg);
    validate(p);
    const double phi = sphere_shape_factor(2.0 * cfg.sphere_radius / p.lambda).value;
    return {sphere_slab_prefactor(cfg, p, c) * phi, -cfg.separation / p.lambda};
}

ForceValue sphere_slab_force_pfa(const SphereSlabConfig& cfg, MetaphysicalThickness d2,
                                 const YukawaParams& p, const PhysicalConstants& c) {
    validate(cfg);
    validate(p);
    return {sphere_slab_prefactor(cfg, p, c) * d2.attenuation(p.lambda), -cfg.separation / p.lambda};
}

EtaResult eta(double sphere_radius, MetaphysicalThickness d2, double lambda) {
    require(std::isfinite(sphere_radius) && sphere_radius > 0.0, "sphere radius must be > 0");
    require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
    const auto phi = sphere_shape_factor(2.0 * sphere_radius / lambda);
    return {phi.value / d2.attenuation(lambda), phi.regime};
}

double pfa_force_from_energy(double e_pp, double r_bar) {
    require(std::isfinite(r_bar) && r_bar > 0.0, "effective radius must be > 0");
    return 2.0 * pi * r_bar * e_pp;
}

double pressure_from_frequency_shift(double delta_nu_sq, const ResonatorParams& res) {
    validate(res);
    return 2.0 * pi * res.mass * delta_nu_sq / effective_radius(res.curvature);
}

double frequency_shift_from_pressure(double pressure, const ResonatorParams& res) {
    validate(res);
    return effective_radius(res.curvature) * pressure / (2.0 * pi * res.mass);
}

}  // namespace ypfa
