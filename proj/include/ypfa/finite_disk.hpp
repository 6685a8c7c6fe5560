#pragma once

// Forces on a point test mass on the axis of a finite disk, and the
// closest-point / farthest-point ratios used as a figure of merit for how a
// sphere of radius R at gap a feels the disk's finite size.

#include "ypfa/core_model.hpp"

namespace ypfa {

struct XiInputs {
    double a = 0.0;  // closest gap
    double R = 0.0;  // sphere radius
    Disk disk;

    [[nodiscard]] double beta() const { return disk.thickness / R; }
    [[nodiscard]] double gamma() const { return a / R; }
    [[nodiscard]] double kappa() const { return disk.radius / R; }
};
void validate(const XiInputs& x);

struct LogRatio {
    double ln_value = 0.0;

    /// May overflow to inf; ln_value is the primary representation.
    [[nodiscard]] double value() const;
};

/// Exponents closer than this to 1 or 3 (but not equal) are rejected.
inline constexpr double kPolePadding = 1e-6;

double disk_gravity_force(const AxisProbe& probe, const Disk& disk, const PhysicalConstants& c = {});

/// F_g(a) / F_g(a + 2R) in the reduced variables beta, gamma, kappa.
double xi_gravity(const XiInputs& x);

/// Axial force for F = -K rho1 m2 / r^N; logarithmic special forms at N = 1, 3.
/// Throws NumericalRegimeError for N within kPolePadding of 1 or 3.
double disk_power_force(const AxisProbe& probe, const Disk& disk, const PowerLawParams& pl);

double xi_power(const XiInputs& x, double n);

/// Yukawa potential energy of the probe, J.
double disk_yukawa_potential(const AxisProbe& probe, const Disk& disk, const YukawaParams& p,
                             const PhysicalConstants& c = {});

/// -dU/dz, N.
double disk_yukawa_force(const AxisProbe& probe, const Disk& disk, const YukawaParams& p,
                         const PhysicalConstants& c = {});

/// ln|F(z)| / |2 pi alpha G rho1 m2 lambda| = -z/lambda + ln(edge-corrected
/// bracket). Finite even where F itself underflows.
double disk_yukawa_log_force_factor(double z, const Disk& disk, double lambda);

/// ln[F_Yu(a) / F_Yu(a + 2R)].
LogRatio xi_yukawa(const XiInputs& x, const YukawaParams& p);

}  // namespace ypfa
