#pragma once

// Deterministic adaptive Gauss-Kronrod (7/15) integration on a fixed set of
// breakpoints. The region with the largest error is always split next, ties
// broken by position, and the final sum runs over regions in left-to-right
// order, so a given integrand and spec always produce the same bits.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ypfa {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-30;
    std::size_t max_subdivisions = 1'000'000;
};
void validate(const QuadratureSpec& q);

/// Integrand value with its own uncertainty (e.g. an inner integral).
struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t subdivisions = 0;
    bool converged = false;
    std::string diagnostics;
};

/// Integrates f over [points.front(), points.back()], starting from one
/// region per breakpoint interval. Narrow features must be resolved by the
/// breakpoints: a 15-point rule cannot see a peak that falls between nodes.
QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> points,
                           const QuadratureSpec& q);

/// As integrate(), for integrands carrying their own error; the Kronrod-
/// weighted integrand errors are added to each region's error.
QuadratureResult integrate_estimates(const std::function<Estimate(double)>& f, std::span<const double> points,
                                     const QuadratureSpec& q);

/// Sorted breakpoints in [lo, hi]: the endpoints plus origin +- scale * 2^k
/// for k = -4, -3, ... while inside the interval.
std::vector<double> graded_points(double lo, double hi, double origin, double scale);

/// Sorted union of breakpoint sets, duplicates removed.
std::vector<double> merge_points(std::span<const double> a, std::span<const double> b);

}  // namespace ypfa
