#include "ypfa/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "ypfa/core_model.hpp"
#include "ypfa/numerics.hpp"

namespace ypfa {

namespace {

// Kronrod 15-point nodes on [0, 1] (symmetric), largest first; odd indices
// are the embedded Gauss 7-point nodes. Values from QUADPACK qk15.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

constexpr double eps = std::numeric_limits<double>::epsilon();

struct Region {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double error = 0.0;
    bool splittable = true;
    bool finite = true;
};

Region evaluate(const std::function<Estimate(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double kronrod = 0.0;
    double gauss = 0.0;
    double carried = 0.0;  // Kronrod-weighted integrand errors
    double magnitude = 0.0;
    bool finite = true;
    const auto take = [&](double x, double wk, double wgauss) {
        const Estimate e = f(x);
        finite = finite && std::isfinite(e.value) && std::isfinite(e.error);
        kronrod += wk * e.value;
        gauss += wgauss * e.value;
        carried += wk * std::abs(e.error);
        magnitude += wk * std::abs(e.value);
    };
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double w_gauss = (j % 2 == 1) ? wg[j / 2] : 0.0;
        take(center - dx, wgk[j], w_gauss);
        take(center + dx, wgk[j], w_gauss);
    }
    take(center, wgk[7], wg[3]);

    Region r{lo, hi, half * kronrod, 0.0, true, finite};
    const double roundoff = 50.0 * eps * half * magnitude;
    r.error = std::max(half * std::abs(kronrod - gauss), roundoff) + half * carried;
    // Stop splitting once the midpoint no longer separates distinct doubles.
    r.splittable = half > 4.0 * eps * std::max(std::abs(lo), std::abs(hi));
    return r;
}

struct WorseFirst {
    bool operator()(const Region& a, const Region& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.lo > b.lo;
    }
};

QuadratureResult run(const std::function<Estimate(double)>& f, std::span<const double> points,
                     const QuadratureSpec& q) {
    validate(q);
    if (points.size() < 2) throw InputError("integration needs at least two breakpoints");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i] > points[i - 1])) throw InputError("integration breakpoints must be strictly increasing");
    }

    std::priority_queue<Region, std::vector<Region>, WorseFirst> active;
    std::vector<Region> settled;
    double value = 0.0;
    double error = 0.0;
    QuadratureResult out;

    const auto add = [&](const Region& r) {
        value += r.value;
        error += r.error;
        if (!r.finite) out.diagnostics = "integrand not finite";
        if (r.splittable) {
            active.push(r);
        } else {
            settled.push_back(r);
        }
    };
    for (std::size_t i = 1; i < points.size(); ++i) add(evaluate(f, points[i - 1], points[i]));

    const auto target = [&] { return std::max(q.rel_tol * std::abs(value), q.abs_tol); };
    std::size_t since_resum = 0;
    while (!active.empty() && error > target() && out.subdivisions < q.max_subdivisions &&
           out.diagnostics.empty()) {
        const Region worst = active.top();
        active.pop();
        value -= worst.value;
        error -= worst.error;
        const double mid = 0.5 * (worst.lo + worst.hi);
        add(evaluate(f, worst.lo, mid));
        add(evaluate(f, mid, worst.hi));
        ++out.subdivisions;
        // The running sums drift after many subtractions; rebuild them now and then.
        if (++since_resum == 4096) {
            since_resum = 0;
            auto copy = active;
            CompensatedSum v;
            CompensatedSum e;
            while (!copy.empty()) {
                v += copy.top().value;
                e += copy.top().error;
                copy.pop();
            }
            for (const Region& r : settled) {
                v += r.value;
                e += r.error;
            }
            value = v.value();
            error = e.value();
        }
    }

    while (!active.empty()) {
        settled.push_back(active.top());
        active.pop();
    }
    std::sort(settled.begin(), settled.end(), [](const Region& a, const Region& b) { return a.lo < b.lo; });
    CompensatedSum v;
    CompensatedSum e;
    for (const Region& r : settled) {
        v += r.value;
        e += r.error;
    }
    out.value = v.value();
    out.error = e.value();
    out.converged = out.diagnostics.empty() && out.error <= std::max(q.rel_tol * std::abs(out.value), q.abs_tol);
    if (!out.converged && out.diagnostics.empty()) {
        out.diagnostics = out.subdivisions >= q.max_subdivisions ? "subdivision limit reached"
                                                                  : "error estimate stalled at round-off";
    }
    return out;
}

}  // namespace

void validate(const QuadratureSpec& q) {
    if (!(q.rel_tol > 0.0 && q.rel_tol < 1.0)) throw InputError("quadrature rel_tol must be in (0, 1)");
    if (!(q.abs_tol >= 0.0)) throw InputError("quadrature abs_tol must be >= 0");
    if (q.max_subdivisions == 0) throw InputError("quadrature max_subdivisions must be >= 1");
}

QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> points,
                           const QuadratureSpec& q) {
    return run([&f](double x) { return Estimate{f(x), 0.0}; }, points, q);
}

QuadratureResult integrate_estimates(const std::function<Estimate(double)>& f, std::span<const double> points,
                                     const QuadratureSpec& q) {
    return run(f, points, q);
}

std::vector<double> graded_points(double lo, double hi, double origin, double scale) {
    std::vector<double> pts{lo, hi};
    if (scale > 0.0 && std::isfinite(scale)) {
        for (double step = scale / 16.0; step < hi - lo; step *= 2.0) {
            if (origin + step > lo && origin + step < hi) pts.push_back(origin + step);
            if (origin - step > lo && origin - step < hi) pts.push_back(origin - step);
        }
    }
    if (origin > lo && origin < hi) pts.push_back(origin);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<double> merge_points(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace ypfa
