#pragma once

// Brute-force reference values: the point-pair kernels integrated over the
// bodies by adaptive quadrature. Nothing here calls the closed-form modules.
//
// Integrals are carried out in reduced (dimensionless) variables and scaled
// back to SI afterwards, so QuadratureSpec tolerances, abs_tol included,
// apply to the reduced integral. Large exponential factors such as
// exp(-a/lambda) stay in log_scale.

#include <cstddef>
#include <string>
#include <variant>

#include "ypfa/core_model.hpp"
#include "ypfa/quadrature.hpp"

namespace ypfa {

struct OracleReport {
    double value = 0.0;           // SI, times exp(log_scale)
    double error_estimate = 0.0;  // same units as value
    double log_scale = 0.0;
    std::size_t subdivisions_used = 0;
    bool converged = false;
    std::string diagnostics;

    /// value * exp(log_scale); may underflow.
    [[nodiscard]] double si() const;
};

struct EnergyForceReport {
    OracleReport energy;  // J
    OracleReport force;   // N, along +z on the sphere
};

/// Sphere above an infinite slab, integrated in horizontal slices of the
/// sphere through the slab potential.
EnergyForceReport oracle_sphere_slab_yukawa(const SphereSlabConfig& cfg, const YukawaParams& p,
                                            const PhysicalConstants& c = {}, const QuadratureSpec& q = {});

struct SlicingReport {
    OracleReport horizontal;  // slices at constant height
    OracleReport columns;     // vertical cylinders over the sphere's shadow
};

/// The sphere-slab Yukawa energy computed with both slicings.
SlicingReport oracle_slicing_equivalence(const SphereSlabConfig& cfg, const YukawaParams& p,
                                         const PhysicalConstants& c = {}, const QuadratureSpec& q = {});

struct NewtonInteraction {};
using Interaction = std::variant<NewtonInteraction, YukawaParams>;

struct TwoSphereReport {
    OracleReport exact;  // volume integral of the force on sphere 2
    OracleReport epfa;   // sum of slab-slab pressures over the shadow columns
};

/// Force on sphere 2 along the line of centres (negative = attraction).
TwoSphereReport oracle_two_spheres(double r1, double r2, double center_distance, double rho1, double rho2,
                                   const Interaction& interaction, const PhysicalConstants& c = {},
                                   const QuadratureSpec& q = {});

struct PowerKernel {
    PowerLawParams params;
};
struct YukawaPotentialKernel {
    YukawaParams params;
};
struct YukawaForceKernel {
    YukawaParams params;
};
using DiskKernel = std::variant<NewtonInteraction, PowerKernel, YukawaPotentialKernel, YukawaForceKernel>;

/// Axial force (or, for YukawaPotentialKernel, potential energy) of a probe
/// on the disk axis, by 2D quadrature over (r, depth).
OracleReport oracle_disk_point(const AxisProbe& probe, const Disk& disk, const DiskKernel& kernel,
                               const PhysicalConstants& c = {}, const QuadratureSpec& q = {});

/// Yukawa potential per unit test mass at height z above the layered slab,
/// J/kg, integrating sheet potentials through the stack.
OracleReport oracle_layered_slab_potential(double z, const LayeredSlab& slab, const YukawaParams& p,
                                           const PhysicalConstants& c = {}, const QuadratureSpec& q = {});

/// Layered sphere-slab energy and force by 2D quadrature over each shell.
EnergyForceReport oracle_layered_sphere_slab(const LayeredConfig& cfg, const YukawaParams& p,
                                             const PhysicalConstants& c = {}, const QuadratureSpec& q = {});

/// Pressure between two homogeneous slabs a gap apart (negative =
/// attraction), by 2D quadrature over both thicknesses.
OracleReport oracle_slab_slab_pressure(double gap, double d1, double rho1, MetaphysicalThickness d2, double rho2,
                                       const YukawaParams& p, const PhysicalConstants& c = {},
                                       const QuadratureSpec& q = {});

}  // namespace ypfa
