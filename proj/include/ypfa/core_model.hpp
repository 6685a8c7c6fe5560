#pragma once

// Physical constants, units and the body/material types shared by every
// force model. All quantities are SI: metres, kg/m^3, newtons.

#include <optional>
#include <stdexcept>
#include <string>

namespace ypfa {

/// Bad user input: violated precondition, malformed config, bad unit.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A formula was asked to work in a regime it cannot evaluate honestly
/// (e.g. a power-law exponent sitting next to a pole).
class NumericalRegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct PhysicalConstants {
    double G = 6.67430e-11;  // CODATA 2018, m^3 kg^-1 s^-2
};
void validate(const PhysicalConstants& c);

/// Yukawa correction to gravity, V = -alpha G m1 m2 exp(-r/lambda) / r.
struct YukawaParams {
    double alpha = 1.0;
    double lambda = 1.0;
};
void validate(const YukawaParams& p);

/// Homogeneous film; thickness 0 means the layer is absent.
struct Layer {
    double thickness = 0.0;
    double density = 0.0;

    [[nodiscard]] bool present() const { return thickness > 0.0; }
};
void validate(const Layer& l, const char* what);

/// Laterally infinite slab: a base of thickness D1 covered by a middle and a
/// top film. The top film faces the sphere.
struct LayeredSlab {
    Layer base;
    Layer middle;
    Layer top;

    [[nodiscard]] double total_thickness() const {
        return base.thickness + middle.thickness + top.thickness;
    }
};
void validate(const LayeredSlab& s);

/// Sphere of radius R with two concentric coatings; the outer coat faces the slab.
struct LayeredSphere {
    double core_radius = 0.0;
    double core_density = 0.0;
    Layer inner_coat;
    Layer outer_coat;

    [[nodiscard]] double outer_radius() const {
        return core_radius + inner_coat.thickness + outer_coat.thickness;
    }
};
void validate(const LayeredSphere& s);

struct SphereSlabConfig {
    double separation = 0.0;      // a, closest gap
    double sphere_radius = 0.0;   // R
    double sphere_density = 0.0;  // rho2
    double slab_thickness = 0.0;  // D1
    double slab_density = 0.0;    // rho1
};
void validate(const SphereSlabConfig& cfg);

struct CurvatureRadii {
    double r_x = 0.0;
    double r_y = 0.0;
};

/// Geometric mean sqrt(r_x r_y) of the principal radii of curvature.
double effective_radius(const CurvatureRadii& c);

/// Thickness of the fictitious upper plate used by the parallel-plate
/// mapping. Infinite is a distinct state, so its attenuation factor is
/// exactly 1 rather than 1 - exp(-huge).
class MetaphysicalThickness {
public:
    static MetaphysicalThickness infinite() { return MetaphysicalThickness{}; }
    static MetaphysicalThickness finite(double d2);

    [[nodiscard]] bool is_infinite() const { return !d2_.has_value(); }
    /// Metres; +inf for the infinite state.
    [[nodiscard]] double value() const;
    /// 1 - exp(-d2/lambda).
    [[nodiscard]] double attenuation(double lambda) const;

    friend bool operator==(const MetaphysicalThickness&, const MetaphysicalThickness&) = default;

private:
    MetaphysicalThickness() = default;
    std::optional<double> d2_;
};

/// Finite disk standing in for a planar plate of finite size.
struct Disk {
    double radius = 0.0;
    double thickness = 0.0;
    double density = 0.0;
};
void validate(const Disk& d);

struct AxisProbe {
    double z = 0.0;     // height above the disk's top face
    double mass = 1.0;  // m2
};
void validate(const AxisProbe& probe);

/// F = -K rho1 m2 / r^N between point masses.
struct PowerLawParams {
    double k = 1.0;
    double n = 2.0;
};
void validate(const PowerLawParams& p);

struct LayeredConfig {
    double separation = 0.0;  // outer coat to top film
    LayeredSphere sphere;
    LayeredSlab slab;
    MetaphysicalThickness d2 = MetaphysicalThickness::infinite();  // PFA only
};
void validate(const LayeredConfig& cfg);

struct ResonatorParams {
    double mass = 0.0;
    CurvatureRadii curvature;
};
void validate(const ResonatorParams& r);

enum class DensityUnit { g_per_cm3, kg_per_m3 };
enum class LengthUnit { nm, um, mm, m };

double to_si_density(double value, DensityUnit unit);
double to_si_length(double value, LengthUnit unit);

}  // namespace ypfa
