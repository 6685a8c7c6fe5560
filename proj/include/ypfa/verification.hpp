#pragma once

// The closed-form vs quadrature check suite behind `oracle-verify` and the
// acceptance gate.

#include <optional>
#include <string>
#include <vector>

#include "ypfa/core_model.hpp"
#include "ypfa/quadrature.hpp"

namespace ypfa {

enum class CheckKind {
    agreement,  // closed form and oracle must agree within tolerance
    deviation,  // the two must differ by more than tolerance
    info,       // recorded only
};

struct CheckResult {
    std::string name;
    std::string group;
    CheckKind kind = CheckKind::agreement;
    double closed_form = 0.0;  // SI where representable
    double oracle = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool converged = false;
    bool passed = false;
    std::string detail;
};

struct Perturbation {
    std::string group;  // checks whose group equals this
    double factor = 1.0;
};

struct VerifyOptions {
    QuadratureSpec quadrature;
    /// Replaces every agreement tolerance; must not be tighter than quadrature.rel_tol.
    std::optional<double> tolerance;
    /// Scales the closed-form side of one group, to exercise the failure path.
    std::optional<Perturbation> perturb;
    int workers = 1;
};
void validate(const VerifyOptions& o);

/// Groups: sphere_slab, layered_potential, layered_epfa, pfa_terms,
/// slab_pressure, disk_newton, disk_power, disk_yukawa_potential,
/// disk_yukawa_force (3x3x3 grid over gap, lambda and geometry scale).
std::vector<CheckResult> run_grid_checks(const VerifyOptions& o);

/// Horizontal slices vs vertical columns, and both vs the closed form, at
/// five sphere-slab configurations.
std::vector<CheckResult> run_slicing_checks(const VerifyOptions& o);

/// Two equal spheres a gap 0.1 R apart, plus a recorded sweep over the gap.
std::vector<CheckResult> run_two_sphere_checks(const VerifyOptions& o);

std::vector<CheckResult> run_all_checks(const VerifyOptions& o);

/// One line per check plus a summary.
std::string format_report(const std::vector<CheckResult>& checks);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace ypfa
