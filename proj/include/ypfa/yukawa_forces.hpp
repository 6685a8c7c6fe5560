#pragma once

// Closed-form Yukawa interactions between homogeneous bodies: point pair,
// parallel slabs, sphere above an infinite slab (exact and PFA), their ratio
// eta, and the PFA / frequency-shift mappings used in resonator experiments.

#include "ypfa/core_model.hpp"
#include "ypfa/numerics.hpp"

namespace ypfa {

enum class EtaRegime { series_small_u, direct };
const char* to_string(EtaRegime r);

struct ShapeFactor {
    double value = 0.0;
    EtaRegime regime = EtaRegime::direct;
};

struct EtaResult {
    double eta = 0.0;
    EtaRegime regime = EtaRegime::direct;
};

/// Below this u = 2R/lambda the sphere shape factor is summed as a series.
inline constexpr double kShapeFactorSeriesThreshold = 1e-3;

/// Phi(u) = 1 - 2/u + exp(-u) (1 + 2/u), u = 2R/lambda: the factor by which
/// a finite sphere reduces the surface-force limit. Phi -> u^2/6 as u -> 0
/// and Phi -> 1 as u -> inf.
ShapeFactor sphere_shape_factor(double u);
/// Taylor series sum_k (-u)^k (k-1)/(k+1)!, k >= 2. Accurate for u <~ 0.1.
double sphere_shape_factor_series(double u);
/// Closed form evaluated in 113-bit floating point, so the cancellation of
/// its O(1/u) terms stays harmless down to u ~ 1e-6.
double sphere_shape_factor_direct(double u);

/// -alpha G m1 m2 exp(-r/lambda) / r.
double yukawa_pair_energy(double m1, double m2, double r, const YukawaParams& p,
                          const PhysicalConstants& c = {});

/// Pressure between two infinite homogeneous slabs facing each other across
/// a gap a; negative means attraction.
double slab_slab_pressure(double a, double d1, double rho1, MetaphysicalThickness d2, double rho2,
                          const YukawaParams& p, const PhysicalConstants& c = {});

/// Interaction energy per unit area of the same pair, with P = -dE/da.
double slab_slab_energy_per_area(double a, double d1, double rho1, MetaphysicalThickness d2,
                                 double rho2, const YukawaParams& p, const PhysicalConstants& c = {});

/// Exact force between a homogeneous sphere and an infinite slab under the
/// additivity assumption (the same number the surface-element sum gives).
ForceValue sphere_slab_force_exact(const SphereSlabConfig& cfg, const YukawaParams& p,
                                   const PhysicalConstants& c = {});

/// Parallel-plate mapping F = 2 pi R P(a), with the fictitious upper plate of
/// thickness d2 standing in for the sphere.
ForceValue sphere_slab_force_pfa(const SphereSlabConfig& cfg, MetaphysicalThickness d2,
                                 const YukawaParams& p, const PhysicalConstants& c = {});

/// exact / pfa = Phi(2R/lambda) / (1 - exp(-D2/lambda)); independent of the gap.
EtaResult eta(double sphere_radius, MetaphysicalThickness d2, double lambda);

/// F_sp = 2 pi Rbar E_pp.
double pfa_force_from_energy(double e_pp, double r_bar);

/// P_pp = 2 pi m dnu^2 / Rbar, inverting dnu^2 = Rbar P_pp / (2 pi m).
double pressure_from_frequency_shift(double delta_nu_sq, const ResonatorParams& res);
double frequency_shift_from_pressure(double pressure, const ResonatorParams& res);

}  // namespace ypfa
