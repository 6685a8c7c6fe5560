#pragma once

// Yukawa forces between a coated sphere and a coated infinite slab.

#include <array>

#include "ypfa/core_model.hpp"
#include "ypfa/numerics.hpp"
#include "ypfa/yukawa_forces.hpp"

namespace ypfa {

struct EtaDeltaResult {
    double eta_delta = 0.0;
    double eta_homogeneous = 0.0;  // eta at R + inner + outer coat
    double ratio = 0.0;            // eta_delta / eta_homogeneous
};

/// Yukawa potential per unit test mass at height z above the top film,
/// J/kg. Each film contributes rho_i (1 - exp(-t_i/lambda)) attenuated by
/// the films above it.
double layered_slab_potential(double z, const LayeredSlab& slab, const YukawaParams& p,
                              const PhysicalConstants& c = {});

/// The bracket of layered_slab_potential: density weighted by film
/// thickness in units of lambda, kg/m^3.
double slab_effective_density(const LayeredSlab& slab, double lambda);

/// Interaction energy of the layered pair, summed over core, inner and
/// outer coat (spherical-shell integration of the slab potential).
ForceValue layered_epfa_energy(const LayeredConfig& cfg, const YukawaParams& p,
                               const PhysicalConstants& c = {});

/// -dU/da = U/lambda.
ForceValue layered_epfa_force(const LayeredConfig& cfg, const YukawaParams& p,
                              const PhysicalConstants& c = {});

/// Slab film (row: base, middle, top) x sphere layer (column: core/D2,
/// inner, outer) contributions of the PFA force.
using PfaTermMatrix = std::array<std::array<ForceValue, 3>, 3>;
PfaTermMatrix layered_pfa_terms(const LayeredConfig& cfg, const YukawaParams& p,
                                const PhysicalConstants& c = {});

/// 2 pi R x pressure between the layered slab and a metaphysical slab of
/// thickness d2, density rho2, carrying the sphere's two coats.
ForceValue layered_pfa_force(const LayeredConfig& cfg, const YukawaParams& p,
                             const PhysicalConstants& c = {});

/// eta_Delta = EPFA / PFA for the layered pair, plus the homogeneous eta of
/// a sphere of radius R + inner + outer coat for comparison.
EtaDeltaResult eta_delta(const LayeredConfig& cfg, const YukawaParams& p,
                         const PhysicalConstants& c = {});

/// e^{-t_out} / lambda^2 * integral_{r_lo}^{r_hi} r sinh(r/lambda) dr with
/// t = r/lambda. Exposed for tests.
double shell_moment(double r_lo, double r_hi, double r_out, double lambda);

}  // namespace ypfa
