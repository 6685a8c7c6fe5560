#pragma once

// alpha-lambda exclusion limits from per-separation force residuals: the
// largest |alpha| a Yukawa term can have without its force exceeding the
// residual at some tabulated separation.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "ypfa/core_model.hpp"
#include "ypfa/numerics.hpp"
#include "ypfa/sweep.hpp"

namespace ypfa {

enum class LimitMethod { pfa, epfa };
const char* to_string(LimitMethod m);
LimitMethod parse_method(const std::string& text);

struct ResidualEntry {
    double separation = 0.0;  // m
    double residual = 0.0;    // N, >= 0
};

struct ResidualBound {
    std::vector<ResidualEntry> entries;
};
void validate(const ResidualBound& b);

/// CSV with header `separation_m,residual_N`; errors name the offending line.
ResidualBound read_residuals(std::istream& in, const std::string& source_name);
ResidualBound load_residuals(const std::filesystem::path& path);

/// Homogeneous sphere over a homogeneous slab; d2 is the PFA plate.
struct HomogeneousGeometry {
    SphereSlabConfig body;
    MetaphysicalThickness d2 = MetaphysicalThickness::infinite();
};

/// The separation stored in either alternative is ignored; every bound
/// entry supplies its own.
using LimitGeometry = std::variant<HomogeneousGeometry, LayeredConfig>;

struct ExclusionPoint {
    double lambda = 0.0;
    double alpha_bound = 0.0;      // may overflow to inf for lambda << a
    double log_alpha_bound = 0.0;  // ln(alpha_bound), always finite for nonzero residuals
    double best_separation = 0.0;
    LimitMethod method = LimitMethod::pfa;
};

/// Force at unit alpha for the chosen geometry and method at separation a.
ForceValue unit_alpha_force(double a, double lambda, const LimitGeometry& g, LimitMethod method,
                            const PhysicalConstants& c = {});

/// min over entries of residual / |F(a; alpha = 1, lambda)|. Throws
/// InputError if every unit-alpha force is zero.
ExclusionPoint alpha_limit(double lambda, const ResidualBound& bounds, const LimitGeometry& g, LimitMethod method,
                           const PhysicalConstants& c = {});

std::vector<ExclusionPoint> exclusion_curve(const SweepGrid& lambda_grid, const ResidualBound& bounds,
                                            const LimitGeometry& g, LimitMethod method,
                                            const PhysicalConstants& c = {}, int workers = 1);

/// Below this range PFA is considered adequate for sphere-plate limits.
inline constexpr double kPfaReliableBelow = 100e-9;

struct LimitShift {
    double ratio = 1.0;  // alpha_EPFA / alpha_PFA = F_PFA / F_EPFA
    bool pfa_unreliable = false;
};

/// Shift of the exclusion limit when the exact (EPFA) force replaces the PFA
/// force computed with plate thickness d2.
LimitShift limit_shift(double lambda, const LimitGeometry& g, MetaphysicalThickness d2,
                       const PhysicalConstants& c = {});

}  // namespace ypfa
