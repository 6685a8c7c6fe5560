#include "ypfa/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace ypfa {

namespace {

constexpr double pi = std::numbers::pi;

// Beyond this many decay lengths exp(-x) is below 2e-35 of the peak.
constexpr double kDecayCutoff = 80.0;

double om_exp(double x) { return -std::expm1(-x); }

// Runs inner integrals of a nested (2D) integration and remembers whether
// every one of them converged.
class InnerIntegrator {
public:
    explicit InnerIntegrator(const QuadratureSpec& outer)
        : spec_{std::max(outer.rel_tol * 1e-2, 1e-13), outer.abs_tol * 1e-2, outer.max_subdivisions} {}

    Estimate operator()(const std::function<double(double)>& f, std::span<const double> points) {
        const QuadratureResult r = integrate(f, points, spec_);
        subdivisions_ += r.subdivisions;
        if (!r.converged && diagnostics_.empty()) diagnostics_ = "inner integral: " + r.diagnostics;
        return {r.value, r.error};
    }

    [[nodiscard]] std::size_t subdivisions() const { return subdivisions_; }
    [[nodiscard]] const std::string& diagnostics() const { return diagnostics_; }

private:
    QuadratureSpec spec_;
    std::size_t subdivisions_ = 0;
    std::string diagnostics_;
};

OracleReport make_report(const QuadratureResult& r, double scale, double log_scale,
                         const InnerIntegrator* inner = nullptr) {
    OracleReport rep;
    rep.value = scale * r.value;
    rep.error_estimate = std::abs(scale) * r.error;
    rep.log_scale = log_scale;
    rep.subdivisions_used = r.subdivisions + (inner ? inner->subdivisions() : 0);
    rep.converged = r.converged && (!inner || inner->diagnostics().empty());
    rep.diagnostics = r.diagnostics;
    if (inner && !inner->diagnostics().empty()) {
        rep.diagnostics = rep.diagnostics.empty() ? inner->diagnostics() : rep.diagnostics + "; " + inner->diagnostics();
    }
    return rep;
}

OracleReport divided(OracleReport rep, double by) {
    rep.value /= by;
    rep.error_estimate /= std::abs(by);
    return rep;
}

void require(bool ok, const char* msg) {
    if (!ok) throw InputError(msg);
}

}  // namespace

double OracleReport::si() const { return value * std::exp(log_scale); }

EnergyForceReport oracle_sphere_slab_yukawa(const SphereSlabConfig& cfg, const YukawaParams& p,
                                            const PhysicalConstants& c, const QuadratureSpec& q) {
    validate(cfg);
    validate(p);
    validate(c);
    const double l = p.lambda;
    const double rho = cfg.sphere_radius / l;
    const double slab = cfg.slab_thickness / l;
    // Slab potential at height a + x lambda, in units of -2 pi alpha G rho1 lambda^2 e^{-a/lambda}:
    // the sheets at depth y contribute e^{-(x+y)}, y in [0, D1/lambda].
    const auto slice = [&](double x) {
        const double area = x * (2.0 * rho - x);  // (R^2 - (R - t)^2) / lambda^2
        return area * std::exp(-x) * om_exp(slab);
    };
    const auto pts = graded_points(0.0, 2.0 * rho, 0.0, 1.0);
    const QuadratureResult r = integrate(slice, pts, q);
    const double scale =
        -2.0 * pi * pi * p.alpha * c.G * cfg.slab_density * cfg.sphere_density * std::pow(l, 5);
    EnergyForceReport out;
    out.energy = make_report(r, scale, -cfg.separation / l);
    // U depends on a only through exp(-a/lambda).
    out.force = divided(out.energy, l);
    return out;
}

SlicingReport oracle_slicing_equivalence(const SphereSlabConfig& cfg, const YukawaParams& p,
                                         const PhysicalConstants& c, const QuadratureSpec& q) {
    SlicingReport out;
    out.horizontal = oracle_sphere_slab_yukawa(cfg, p, c, q).energy;

    const double l = p.lambda;
    const double rho = cfg.sphere_radius / l;
    const double slab = cfg.slab_thickness / l;
    InnerIntegrator inner(q);
    // Column of half-height w = sqrt(R^2 - s^2) / lambda, substituted for the
    // shadow radius s (s ds = -u du); its bottom sits rho - w above the gap.
    const auto column = [&](double w) -> Estimate {
        if (w == 0.0) return {};
        const double bottom = rho - w;
        const auto potential = [&](double y) { return std::exp(-(bottom + y)) * om_exp(slab); };
        const auto pts = graded_points(0.0, 2.0 * w, 0.0, 1.0);
        const Estimate e = inner(potential, pts);
        return {w * e.value, w * e.error};
    };
    const auto pts = graded_points(0.0, rho, rho, 1.0);
    const QuadratureResult r = integrate_estimates(column, pts, q);
    const double scale = -4.0 * pi * pi * p.alpha * c.G * cfg.slab_density * cfg.sphere_density * std::pow(l, 5);
    out.columns = make_report(r, scale, -cfg.separation / l, &inner);
    return out;
}

namespace {

// 3 (x cosh x - sinh x) / x^3 = mantissa * exp(log): the factor by which a
// homogeneous sphere of radius x lambda outweighs its point mass at range.
struct Scaled {
    double mantissa = 1.0;
    double log = 0.0;
};

Scaled sphere_yukawa_form_factor(double x) {
    if (x < 1.0) {
        // 3 sum_{k>=1} 2k x^(2k-2) / (2k+1)!
        double inv_fact = 1.0 / 6.0;
        double power = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 30; ++k) {
            if (k > 1) inv_fact /= (2.0 * k) * (2.0 * k + 1.0);
            const double term = 2.0 * k * power * inv_fact;
            sum += term;
            if (term < 1e-18 * sum) break;
            power *= x * x;
        }
        return {3.0 * sum, 0.0};
    }
    // e^x [(x - 1) + e^{-2x} (x + 1)] / 2
    return {1.5 * ((x - 1.0) + std::exp(-2.0 * x) * (x + 1.0)) / (x * x * x), x};
}

}  // namespace

TwoSphereReport oracle_two_spheres(double r1, double r2, double center_distance, double rho1, double rho2,
                                   const Interaction& interaction, const PhysicalConstants& c,
                                   const QuadratureSpec& q) {
    require(std::isfinite(r1) && r1 > 0.0 && std::isfinite(r2) && r2 > 0.0, "sphere radii must be > 0");
    require(std::isfinite(center_distance) && center_distance > r1 + r2,
            "centre distance must exceed r1 + r2");
    require(rho1 >= 0.0 && rho2 >= 0.0, "densities must be >= 0");
    validate(c);
    const auto* yukawa = std::get_if<YukawaParams>(&interaction);
    if (yukawa) validate(*yukawa);

    TwoSphereReport out;
    const double m1 = 4.0 / 3.0 * pi * r1 * r1 * r1 * rho1;
    const double gap = center_distance - r1 - r2;

    // Exact: sphere 1 acts as a point source (scaled by its form factor for
    // Yukawa); integrate the axial field over sphere 2 at radius x r2 from
    // its centre, nu = 1 + cos(theta) measured from the line of centres.
    {
        const double dm = (center_distance - r2) / r2;  // D - 1 in units of r2
        const double big_d = center_distance / r2;
        const double l = yukawa ? yukawa->lambda / r2 : 0.0;
        InnerIntegrator inner(q);
        const auto shell = [&](double x) -> Estimate {
            if (x == 0.0) return {};
            const double near = dm + (1.0 - x);  // D - x
            const auto field = [&](double nu) {
                const double r = std::sqrt(near * near + 2.0 * big_d * x * nu);
                const double axial = (near + x * nu) / r;
                if (!yukawa) return axial / (r * r);
                // e^{-(r - (D - 1))/l}; r - (D - x) = 2 D x nu / (r + D - x)
                const double excess = 2.0 * big_d * x * nu / (r + near) + (1.0 - x);
                return axial * std::exp(-excess / l) * (1.0 / (r * r) + 1.0 / (l * r));
            };
            auto pts = graded_points(0.0, 2.0, 0.0, yukawa ? l : 2.0);
            const Estimate e = inner(field, pts);
            return {x * x * e.value, x * x * e.error};
        };
        const auto pts = graded_points(0.0, 1.0, 1.0, yukawa ? l : 1.0);
        const QuadratureResult r = integrate_estimates(shell, pts, q);
        double scale = -2.0 * pi * c.G * m1 * rho2 * r2;
        double log_scale = 0.0;
        if (yukawa) {
            const Scaled ff = sphere_yukawa_form_factor(r1 / yukawa->lambda);
            scale *= yukawa->alpha * ff.mantissa;
            log_scale = ff.log - (center_distance - r2) / yukawa->lambda;
        }
        out.exact = make_report(r, scale, log_scale, &inner);
    }

    // EPFA: columns over the common shadow, radius s = r_min sin(phi); each
    // pair of chords is treated as two parallel slabs.
    {
        const double rmin = std::min(r1, r2);
        const auto chord = [](double radius, double s) {
            return std::sqrt((radius - s) * (radius + s));
        };
        const auto column = [&](double phi) {
            const double s = rmin * std::sin(phi);
            const double weight = std::sin(phi) * std::cos(phi);  // s ds / rmin^2
            const double h1 = 2.0 * chord(r1, s);
            const double h2 = 2.0 * chord(r2, s);
            if (!yukawa) return weight * h1 * h2 / (rmin * rmin);
            const double l = yukawa->lambda;
            // gap - (r1 + r2 - chord1 - chord2) with r - chord = s^2 / (r + chord)
            const double extra = s * s / (r1 + 0.5 * h1) + s * s / (r2 + 0.5 * h2);
            return weight * std::exp(-extra / l) * om_exp(h1 / l) * om_exp(h2 / l);
        };
        const double scale_len = yukawa ? std::sqrt(yukawa->lambda / rmin) : 1.0;
        const auto pts = graded_points(0.0, 0.5 * pi, 0.0, scale_len);
        const QuadratureResult r = integrate(column, pts, q);
        // F = integral 2 pi s ds P(s)
        double scale = 0.0;
        double log_scale = 0.0;
        if (!yukawa) {
            // P = -2 pi G rho1 rho2 h1 h2
            scale = -4.0 * pi * pi * c.G * rho1 * rho2 * std::pow(rmin, 4);
        } else {
            const double l = yukawa->lambda;
            // P = -2 pi alpha G rho1 rho2 l^2 e^{-g/l} (1 - e^{-h1/l}) (1 - e^{-h2/l})
            scale = -4.0 * pi * pi * yukawa->alpha * c.G * rho1 * rho2 * l * l * rmin * rmin;
            log_scale = -gap / l;
        }
        out.epfa = make_report(r, scale, log_scale);
    }
    return out;
}

OracleReport oracle_disk_point(const AxisProbe& probe, const Disk& disk, const DiskKernel& kernel,
                               const PhysicalConstants& c, const QuadratureSpec& q) {
    validate(probe);
    validate(disk);
    validate(c);
    const double z = probe.z;
    const double rd = disk.radius / z;
    const double depth = disk.thickness / z;
    const double base = 2.0 * pi * disk.density * probe.mass;

    // Kernel in reduced lengths (units of z): r, h = 1 + y, s = hypot(r, h).
    std::function<double(double, double, double)> f;
    double scale = 0.0;
    double log_scale = 0.0;
    double lz = 0.0;  // lambda / z, 0 for power laws
    if (std::holds_alternative<NewtonInteraction>(kernel)) {
        f = [](double r, double h, double s) { return r * h / (s * s * s); };
        scale = -base * c.G * z;
    } else if (const auto* pk = std::get_if<PowerKernel>(&kernel)) {
        validate(pk->params);
        const double n = pk->params.n;
        f = [n](double r, double h, double s) { return r * h * std::pow(s, -n - 1.0); };
        scale = -base * pk->params.k * std::pow(z, 3.0 - n);
    } else if (const auto* yp = std::get_if<YukawaPotentialKernel>(&kernel)) {
        validate(yp->params);
        lz = yp->params.lambda / z;
        f = [lz](double r, double h, double s) {
            const double beyond = r * r / (s + h) + (h - 1.0);  // s - 1
            return r * std::exp(-beyond / lz) / s;
        };
        scale = -base * yp->params.alpha * c.G * z * z;
        log_scale = -1.0 / lz;
    } else {
        const auto& yf = std::get<YukawaForceKernel>(kernel);
        validate(yf.params);
        lz = yf.params.lambda / z;
        f = [lz](double r, double h, double s) {
            const double beyond = r * r / (s + h) + (h - 1.0);
            return r * h / (s * s) * std::exp(-beyond / lz) * (1.0 / s + 1.0 / lz);
        };
        scale = -base * yf.params.alpha * c.G * z;
        log_scale = -1.0 / lz;
    }

    InnerIntegrator inner(q);
    const auto layer = [&](double y) -> Estimate {
        const double h = 1.0 + y;
        const auto radial = [&](double r) { return f(r, h, std::hypot(r, h)); };
        auto pts = graded_points(0.0, rd, 0.0, h);
        if (lz > 0.0) {
            pts = merge_points(pts, graded_points(0.0, rd, 0.0, lz));
            pts = merge_points(pts, graded_points(0.0, rd, 0.0, std::sqrt(2.0 * h * lz)));
        }
        return inner(radial, pts);
    };
    auto pts = graded_points(0.0, depth, 0.0, 1.0);
    if (lz > 0.0) pts = merge_points(pts, graded_points(0.0, depth, 0.0, lz));
    const QuadratureResult r = integrate_estimates(layer, pts, q);
    return make_report(r, scale, log_scale, &inner);
}

namespace {

struct StackLayer {
    double top = 0.0;     // depth of the upper face, units of lambda
    double bottom = 0.0;  // depth of the lower face
    double density = 0.0;
};

std::vector<StackLayer> stack_of(const LayeredSlab& slab, double l) {
    std::vector<StackLayer> out;
    double d = 0.0;
    for (const Layer* layer : {&slab.top, &slab.middle, &slab.base}) {
        const double next = d + layer->thickness / l;
        if (layer->thickness > 0.0) out.push_back({d, next, layer->density});
        d = next;
    }
    return out;
}

// integral over depth y (units of lambda) of rho(y) e^{-y}: the stack's
// sheet potentials referred to its top face.
QuadratureResult stack_integral(const LayeredSlab& slab, double l, const QuadratureSpec& q) {
    const auto layers = stack_of(slab, l);
    const double total = std::min(layers.back().bottom, kDecayCutoff);
    std::vector<double> edges;
    for (const auto& s : layers) {
        if (s.top < total) edges.push_back(s.top);
        if (s.bottom < total) edges.push_back(s.bottom);
    }
    edges.push_back(total);
    const auto pts = merge_points(graded_points(0.0, total, 0.0, 1.0), edges);
    const auto density = [&](double y) {
        for (const auto& s : layers) {
            if (y <= s.bottom) return s.density * std::exp(-y);
        }
        return 0.0;
    };
    return integrate(density, pts, q);
}

}  // namespace

OracleReport oracle_layered_slab_potential(double z, const LayeredSlab& slab, const YukawaParams& p,
                                           const PhysicalConstants& c, const QuadratureSpec& q) {
    require(std::isfinite(z) && z > 0.0, "height z above the slab must be > 0");
    validate(slab);
    validate(p);
    validate(c);
    const double l = p.lambda;
    // Each sheet of areal density rho dy lambda contributes -2 pi alpha G lambda (rho dy lambda) e^{-(z + y lambda)/lambda}.
    const QuadratureResult r = stack_integral(slab, l, q);
    return make_report(r, -2.0 * pi * p.alpha * c.G * l * l, -z / l);
}

EnergyForceReport oracle_layered_sphere_slab(const LayeredConfig& cfg, const YukawaParams& p,
                                             const PhysicalConstants& c, const QuadratureSpec& q) {
    validate(cfg);
    validate(p);
    validate(c);
    const double l = p.lambda;
    const auto& sph = cfg.sphere;
    const double r_core = sph.core_radius / l;
    const double r_inner = (sph.core_radius + sph.inner_coat.thickness) / l;
    const double r_out = sph.outer_radius() / l;

    const QuadratureResult stack = stack_integral(cfg.slab, l, q);

    const auto density = [&](double r) {
        if (r <= r_core) return sph.core_density;
        if (r <= r_inner) return sph.inner_coat.density;
        return sph.outer_coat.density;
    };
    InnerIntegrator inner(q);
    // Point at radius r, nu = 1 + cos(theta): height above the gap is
    // (r_out - r) + r nu, in units of lambda.
    const auto shell = [&](double r) -> Estimate {
        if (r == 0.0) return {};
        const double standoff = r_out - r;
        const auto ring = [&](double nu) { return std::exp(-(standoff + r * nu)); };
        const auto pts = graded_points(0.0, 2.0, 0.0, 1.0 / r);
        const Estimate e = inner(ring, pts);
        const double w = density(r) * r * r;
        return {w * e.value, w * e.error};
    };
    std::vector<double> edges{r_core, r_inner};
    const auto pts = merge_points(graded_points(0.0, r_out, r_out, 1.0), edges);
    const QuadratureResult body = integrate_estimates(shell, pts, q);

    // U = rho_slab-weighted sheet sum x shell sum, each sheet of the stack
    // giving -2 pi alpha G lambda^2 rho e^{-y} per unit mass, 2 pi r^2 dr dnu.
    const double scale = -4.0 * pi * pi * p.alpha * c.G * std::pow(l, 5);
    QuadratureResult product;
    product.value = stack.value * body.value;
    product.error = std::abs(stack.value) * body.error + std::abs(body.value) * stack.error;
    product.subdivisions = stack.subdivisions + body.subdivisions;
    product.converged = stack.converged && body.converged;
    product.diagnostics = !stack.diagnostics.empty() ? "slab stack: " + stack.diagnostics : body.diagnostics;

    EnergyForceReport out;
    out.energy = make_report(product, scale, -cfg.separation / l, &inner);
    out.force = divided(out.energy, l);
    return out;
}

OracleReport oracle_slab_slab_pressure(double gap, double d1, double rho1, MetaphysicalThickness d2, double rho2,
                                       const YukawaParams& p, const PhysicalConstants& c,
                                       const QuadratureSpec& q) {
    require(std::isfinite(gap) && gap > 0.0, "gap must be > 0");
    require(std::isfinite(d1) && d1 > 0.0, "slab thickness must be > 0");
    validate(p);
    validate(c);
    const double l = p.lambda;
    const double t1 = std::min(d1 / l, kDecayCutoff);
    const double t2 = d2.is_infinite() ? kDecayCutoff : std::min(d2.value() / l, kDecayCutoff);
    InnerIntegrator inner(q);
    // Sheets at depth x in slab 1 and y in slab 2 attract with
    // 2 pi alpha G sigma1 sigma2 e^{-(gap + x + y)} per unit area.
    const auto outer = [&](double x) -> Estimate {
        const auto pair = [x](double y) { return std::exp(-(x + y)); };
        const auto pts = graded_points(0.0, t2, 0.0, 1.0);
        return inner(pair, pts);
    };
    const auto pts = graded_points(0.0, t1, 0.0, 1.0);
    const QuadratureResult r = integrate_estimates(outer, pts, q);
    return make_report(r, -2.0 * pi * p.alpha * c.G * rho1 * rho2 * l * l, -gap / l, &inner);
}

}  // namespace ypfa
