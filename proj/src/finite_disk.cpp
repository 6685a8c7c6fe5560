#include "ypfa/finite_disk.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ypfa/numerics.hpp"

namespace ypfa {

namespace {

constexpr double pi = std::numbers::pi;

// D + sqrt(Rd^2 + z^2) - sqrt(Rd^2 + (z+D)^2), rewritten as a sum of
// positive terms: D Rd^2 [1/(S_z + z) + 1/(S_w + w)] / (S_z + S_w).
double newton_bracket(double z, double d, double rd) {
    const double w = z + d;
    const double sz = std::hypot(rd, z);
    const double sw = std::hypot(rd, w);
    return d * rd * rd * (1.0 / (sz + z) + 1.0 / (sw + w)) / (sz + sw);
}

// Bracket of the general power law with lengths in units of z, so the
// result carries an implicit factor z^(3-N).
double power_bracket_scaled(double z, double d, double rd, double n) {
    const double p = 3.0 - n;
    const double dd = d / z;
    const double rr = rd / z;
    // (1 + dd)^p - 1
    const double axial = std::expm1(p * std::log1p(dd));
    // (rr^2 + (1+dd)^2)^(p/2) - (rr^2 + 1)^(p/2)
    const double base = rr * rr + 1.0;
    const double rim = std::pow(base, 0.5 * p) * std::expm1(0.5 * p * std::log1p(dd * (2.0 + dd) / base));
    return axial - rim;
}

// Q(z) = (1 - e^{-D/l}) - e^{-(S_z - z)/l} (1 - e^{-(S_w - S_z)/l}).
double yukawa_edge_bracket(double z, double d, double rd, double l) {
    const double w = z + d;
    const double sz = std::hypot(rd, z);
    const double sw = std::hypot(rd, w);
    const double rim_standoff = rd * rd / (sz + z);     // S_z - z
    const double rim_depth = d * (z + w) / (sz + sw);   // S_w - S_z
    return one_minus_exp(d / l) - std::exp(-rim_standoff / l) * one_minus_exp(rim_depth / l);
}

}  // namespace

void validate(const XiInputs& x) {
    if (!(std::isfinite(x.a) && x.a > 0.0)) throw InputError("gap a must be > 0");
    if (!(std::isfinite(x.R) && x.R > 0.0)) throw InputError("sphere radius R must be > 0");
    validate(x.disk);
}

double LogRatio::value() const { return std::exp(ln_value); }

double disk_gravity_force(const AxisProbe& probe, const Disk& disk, const PhysicalConstants& c) {
    validate(probe);
    validate(disk);
    return -2.0 * pi * c.G * disk.density * probe.mass * newton_bracket(probe.z, disk.thickness, disk.radius);
}

double xi_gravity(const XiInputs& x) {
    validate(x);
    const double beta = x.beta();
    const double gamma = x.gamma();
    const double kappa = x.kappa();
    return newton_bracket(gamma, beta, kappa) / newton_bracket(2.0 + gamma, beta, kappa);
}

double disk_power_force(const AxisProbe& probe, const Disk& disk, const PowerLawParams& pl) {
    validate(probe);
    validate(disk);
    validate(pl);
    const double n = pl.n;
    const double z = probe.z;
    const double d = disk.thickness;
    const double rd = disk.radius;
    const double w = z + d;
    const double scale = pl.k * disk.density * probe.mass;

    if (n == 1.0) {
        // (Rd^2+z^2) ln(Rd^2+z^2) - (Rd^2+w^2) ln(Rd^2+w^2) + w^2 ln w^2 - z^2 ln z^2,
        // regrouped so every logarithm takes a dimensionless ratio.
        const double a2 = rd * rd + z * z;
        const double b2 = rd * rd + w * w;
        const double t = w * w * std::log(w * w / a2) + z * z * std::log(a2 / (z * z)) +
                         b2 * std::log1p(-d * (z + w) / b2);
        return 0.5 * pi * scale * t;
    }
    if (n == 3.0) {
        const double l = 2.0 * std::log1p(d / z) - std::log1p(d * (z + w) / (rd * rd + z * z));
        return -0.5 * pi * scale * l;
    }
    if (std::abs(n - 1.0) <= kPolePadding || std::abs(n - 3.0) <= kPolePadding) {
        throw NumericalRegimeError("power-law exponent N = " + std::to_string(n) +
                                   " is within 1e-6 of a pole of the general formula; use N = 1 or N = 3 exactly");
    }
    const double bracket = power_bracket_scaled(z, d, rd, n) * std::pow(z, 3.0 - n);
    return 2.0 * pi * scale / ((n - 1.0) * (n - 3.0)) * bracket;
}

double xi_power(const XiInputs& x, double n) {
    validate(x);
    const PowerLawParams pl{1.0, n};
    const Disk disk{x.disk.radius, x.disk.thickness, 1.0};
    return disk_power_force({x.a, 1.0}, disk, pl) / disk_power_force({x.a + 2.0 * x.R, 1.0}, disk, pl);
}

double disk_yukawa_potential(const AxisProbe& probe, const Disk& disk, const YukawaParams& p,
                             const PhysicalConstants& c) {
    validate(probe);
    validate(disk);
    validate(p);
    const double l = p.lambda;
    const double z = probe.z;
    const double rd = disk.radius;
    // Laterally infinite column minus the missing rim, integrated over depth
    // as one non-negative integrand; the rim part has no elementary antiderivative.
    const auto column = [&](double h) {
        const double rim_standoff = rd * rd / (std::hypot(rd, h) + h);  // sqrt(h^2 + Rd^2) - h
        return std::exp(-(h - z) / l) * one_minus_exp(rim_standoff / l);
    };
    using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double near_depth = std::min(disk.thickness, 8.0 * l);
    double bracket = gk::integrate(column, z, z + near_depth, 15, 1e-13);
    if (near_depth < disk.thickness) bracket += gk::integrate(column, z + near_depth, z + disk.thickness, 15, 1e-13);
    return -2.0 * pi * p.alpha * c.G * disk.density * probe.mass * l * std::exp(-z / l) * bracket;
}

double disk_yukawa_force(const AxisProbe& probe, const Disk& disk, const YukawaParams& p,
                         const PhysicalConstants& c) {
    validate(probe);
    validate(disk);
    validate(p);
    const double l = p.lambda;
    return -2.0 * pi * p.alpha * c.G * disk.density * probe.mass * l * std::exp(-probe.z / l) *
           yukawa_edge_bracket(probe.z, disk.thickness, disk.radius, l);
}

double disk_yukawa_log_force_factor(double z, const Disk& disk, double lambda) {
    return -z / lambda + std::log(yukawa_edge_bracket(z, disk.thickness, disk.radius, lambda));
}

LogRatio xi_yukawa(const XiInputs& x, const YukawaParams& p) {
    validate(x);
    validate(p);
    const double l = p.lambda;
    const double d = x.disk.thickness;
    const double rd = x.disk.radius;
    // exp(-z/lambda) factors combine to exactly 2R/lambda.
    const double edges = std::log(yukawa_edge_bracket(x.a, d, rd, l) /
                                  yukawa_edge_bracket(x.a + 2.0 * x.R, d, rd, l));
    return {2.0 * x.R / l + edges};
}

}  // namespace ypfa
