#include "ypfa/core_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ypfa/numerics.hpp"

namespace ypfa {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InputError(msg);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }
bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void validate(const PhysicalConstants& c) {
    require(finite_positive(c.G), "gravitational constant must be > 0");
}

void validate(const YukawaParams& p) {
    require(finite_positive(p.lambda), "Yukawa range lambda must be > 0");
    require(std::isfinite(p.alpha), "Yukawa coupling alpha must be finite");
}

void validate(const Layer& l, const char* what) {
    require(finite_nonneg(l.thickness), std::string(what) + ": thickness must be >= 0");
    require(finite_nonneg(l.density), std::string(what) + ": density must be >= 0");
}

void validate(const LayeredSlab& s) {
    validate(s.base, "slab.base");
    validate(s.middle, "slab.middle");
    validate(s.top, "slab.top");
    require(s.base.thickness > 0.0, "slab.base: thickness must be > 0");
}

void validate(const LayeredSphere& s) {
    require(finite_positive(s.core_radius), "sphere: core radius must be > 0");
    require(finite_nonneg(s.core_density), "sphere: core density must be >= 0");
    validate(s.inner_coat, "sphere.inner_coat");
    validate(s.outer_coat, "sphere.outer_coat");
}

double effective_radius(const CurvatureRadii& c) {
    require(finite_positive(c.r_x) && finite_positive(c.r_y),
            "principal radii of curvature must be > 0");
    return std::sqrt(c.r_x * c.r_y);
}

MetaphysicalThickness MetaphysicalThickness::finite(double d2) {
    require(finite_positive(d2), "metaphysical thickness D2 must be > 0 (use infinite() for D2 -> inf)");
    MetaphysicalThickness t;
    t.d2_ = d2;
    return t;
}

double MetaphysicalThickness::value() const {
    return d2_ ? *d2_ : std::numeric_limits<double>::infinity();
}

double MetaphysicalThickness::attenuation(double lambda) const {
    if (!d2_) return 1.0;
    return one_minus_exp(*d2_ / lambda);
}

void validate(const SphereSlabConfig& cfg) {
    require(std::isfinite(cfg.separation) && cfg.separation > 0.0, "separation a must be > 0");
    require(std::isfinite(cfg.sphere_radius) && cfg.sphere_radius > 0.0, "sphere radius must be > 0");
    require(std::isfinite(cfg.slab_thickness) && cfg.slab_thickness > 0.0, "slab thickness must be > 0");
    require(std::isfinite(cfg.sphere_density) && cfg.sphere_density >= 0.0, "sphere density must be >= 0");
    require(std::isfinite(cfg.slab_density) && cfg.slab_density >= 0.0, "slab density must be >= 0");
}

void validate(const LayeredConfig& cfg) {
    if (!(std::isfinite(cfg.separation) && cfg.separation > 0.0)) {
        throw InputError("separation a must be > 0");
    }
    validate(cfg.sphere);
    validate(cfg.slab);
}

void validate(const AxisProbe& probe) {
    if (!(std::isfinite(probe.z) && probe.z > 0.0)) throw InputError("probe height z must be > 0");
    if (!std::isfinite(probe.mass)) throw InputError("probe mass must be finite");
}

void validate(const Disk& d) {
    require(finite_positive(d.radius), "disk radius must be > 0");
    require(finite_positive(d.thickness), "disk thickness must be > 0");
    require(finite_nonneg(d.density), "disk density must be >= 0");
}

void validate(const PowerLawParams& p) {
    require(std::isfinite(p.n) && p.n > 0.0, "power-law exponent N must be > 0");
    require(std::isfinite(p.k), "power-law coupling K must be finite");
}

void validate(const ResonatorParams& r) {
    require(finite_positive(r.mass), "resonator mass must be > 0");
    (void)effective_radius(r.curvature);
}

double to_si_density(double value, DensityUnit unit) {
    require(std::isfinite(value) && value >= 0.0, "density must be >= 0");
    switch (unit) {
        case DensityUnit::g_per_cm3: return value * 1000.0;
        case DensityUnit::kg_per_m3: return value;
    }
    return value;
}

double to_si_length(double value, LengthUnit unit) {
    require(std::isfinite(value), "length must be finite");
    switch (unit) {
        case LengthUnit::nm: return value * 1e-9;
        case LengthUnit::um: return value * 1e-6;
        case LengthUnit::mm: return value * 1e-3;
        case LengthUnit::m: return value;
    }
    return value;
}

}  // namespace ypfa
