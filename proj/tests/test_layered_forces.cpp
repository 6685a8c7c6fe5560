#include <doctest.h>

#include <cmath>
#include <numbers>

#include "reference_values.hpp"
#include "ypfa/layered_forces.hpp"
#include "ypfa/yukawa_forces.hpp"

using namespace ypfa;

namespace {

constexpr double pi = std::numbers::pi;

LayeredSlab stack() { return {{3.5e-6, 2330.0}, {10e-9, 7140.0}, {210e-9, 19280.0}}; }

LayeredConfig coated(double core_radius = 150e-6, double a = 100e-9) {
    LayeredConfig cfg;
    cfg.separation = a;
    cfg.sphere = {core_radius, 4100.0, {10e-9, 7140.0}, {180e-9, 19280.0}};
    cfg.slab = stack();
    cfg.d2 = MetaphysicalThickness::finite(100.0);
    return cfg;
}

LayeredConfig bare(double a = 100e-9) {
    LayeredConfig cfg;
    cfg.separation = a;
    cfg.sphere = {150e-6, 19280.0, {}, {}};
    cfg.slab = {{3.5e-6, 2330.0}, {}, {}};
    return cfg;
}

// Every density equal within each body.
LayeredConfig uniform(double a = 100e-9) {
    LayeredConfig cfg = coated(150e-6, a);
    cfg.sphere.inner_coat.density = cfg.sphere.outer_coat.density = cfg.sphere.core_density;
    cfg.slab.middle.density = cfg.slab.top.density = cfg.slab.base.density;
    return cfg;
}

double long_double_moment(double lo, double hi, double out, double l) {
    const auto anti = [l](long double r) {
        const long double t = r / l;
        return static_cast<long double>(l) * r * std::cosh(t) - static_cast<long double>(l) * l * std::sinh(t);
    };
    return static_cast<double>(std::exp(-static_cast<long double>(out) / l) * (anti(hi) - anti(lo)) /
                               (static_cast<long double>(l) * l));
}

}  // namespace

TEST_CASE("layered slab potential") {
    CHECK(layered_slab_potential(100e-9, stack(), {1.0, 100e-9}) ==
          doctest::Approx(ref::layered_potential_100nm_100nm).epsilon(1e-13));
    CHECK(layered_slab_potential(1e-6, stack(), {1.0, 2e-6}) ==
          doctest::Approx(ref::layered_potential_1um_2um).epsilon(1e-13));

    const PhysicalConstants c;
    for (double l : {1e-9, 1e-7, 1e-5, 1e-2}) {
        const YukawaParams p{1.0, l};
        const double z = 300e-9;
        LayeredSlab same = stack();
        same.middle.density = same.top.density = same.base.density;
        const double thickness = same.total_thickness();
        const double homogeneous =
            -2.0 * pi * c.G * same.base.density * l * l * std::exp(-z / l) * -std::expm1(-thickness / l);
        CHECK(relative_error(layered_slab_potential(z, same, p), homogeneous) <= 1e-12);

        const LayeredSlab plain{{3.5e-6, 2330.0}, {}, {}};
        const double base_only = -2.0 * pi * c.G * 2330.0 * l * l * std::exp(-z / l) * -std::expm1(-3.5e-6 / l);
        CHECK(relative_error(layered_slab_potential(z, plain, p), base_only) <= 1e-14);
    }
    CHECK_THROWS_AS(layered_slab_potential(0.0, stack(), {1.0, 1e-6}), InputError);
}

TEST_CASE("layered energy against the reference integrals") {
    CHECK(relative_error(layered_epfa_energy(coated(150e-6), {1.0, 1e-6}).newtons(),
                         ref::layered_energy_150um_1um) <= 1e-12);
    CHECK(relative_error(layered_epfa_energy(coated(20e-6), {1.0, 100e-9}).newtons(),
                         ref::layered_energy_20um_100nm) <= 1e-12);
}

TEST_CASE("shell moment") {
    for (double l : {1e-6, 3e-6, 40e-6}) {
        const double lo = 10e-6, hi = 12e-6, out = 12.5e-6;
        CHECK(relative_error(shell_moment(lo, hi, out, l), long_double_moment(lo, hi, out, l)) <= 1e-12);
    }
    CHECK(relative_error(shell_moment(0.0, 1e-6, 1e-6, 1e-3), long_double_moment(0.0, 1e-6, 1e-6, 1e-3)) <= 1e-12);
    const double huge = shell_moment(150e-6, 150.19e-6, 150.19e-6, 1e-10);
    CHECK(std::isfinite(huge));
    CHECK(huge > 0.0);
    CHECK(shell_moment(5e-6, 5e-6, 6e-6, 1e-6) == 0.0);
}

TEST_CASE("reductions to the homogeneous sphere") {
    for (double l : {1e-9, 30e-9, 1e-6, 1e-4, 1e-1}) {
        const YukawaParams p{1.0, l};
        SphereSlabConfig h{100e-9, 150e-6, 19280.0, 3.5e-6, 2330.0};
        CHECK(relative_error(ratio(layered_epfa_force(bare(), p), sphere_slab_force_exact(h, p)), 1.0) <= 1e-12);
        CHECK(relative_error(ratio(layered_pfa_force(bare(), p),
                                   sphere_slab_force_pfa(h, MetaphysicalThickness::infinite(), p)),
                             1.0) <= 1e-13);

        const LayeredConfig u = uniform();
        const SphereSlabConfig merged{u.separation, u.sphere.outer_radius(), u.sphere.core_density,
                                      u.slab.total_thickness(), u.slab.base.density};
        CHECK(relative_error(ratio(layered_epfa_force(u, p), sphere_slab_force_exact(merged, p)), 1.0) <= 1e-12);
    }
}

TEST_CASE("force is minus the derivative of the energy") {
    for (double l : {200e-9, 2e-6, 50e-6}) {
        const YukawaParams p{1.0, l};
        const double a = 300e-9, h = a * 1e-6;
        const double up = layered_epfa_energy(coated(150e-6, a + h), p).newtons();
        const double down = layered_epfa_energy(coated(150e-6, a - h), p).newtons();
        const double fd = -(up - down) / (2.0 * h);
        CHECK(relative_error(layered_epfa_force(coated(150e-6, a), p).newtons(), fd) <= 1e-8);
        CHECK(relative_error(layered_epfa_force(coated(150e-6, a), p).newtons(),
                             layered_epfa_energy(coated(150e-6, a), p).newtons() / l) <= 1e-15);
    }
}

TEST_CASE("linearity") {
    const YukawaParams p{1.0, 1e-6};
    const double f = layered_epfa_force(coated(), p).newtons();
    CHECK(layered_epfa_force(coated(), {2.0, 1e-6}).newtons() == 2.0 * f);
    CHECK(layered_pfa_force(coated(), {-4.0, 1e-6}).newtons() == -4.0 * layered_pfa_force(coated(), p).newtons());

    // superposition in a single density, with the other contributions removed
    auto with_inner = [&](double rho) {
        LayeredConfig cfg = coated();
        cfg.sphere.inner_coat.density = rho;
        return layered_epfa_energy(cfg, p).newtons();
    };
    const double base = with_inner(0.0);
    CHECK(relative_error(with_inner(3000.0 + 4140.0) - base,
                         (with_inner(3000.0) - base) + (with_inner(4140.0) - base)) <= 1e-12);
    auto with_top = [&](double rho) {
        LayeredConfig cfg = coated();
        cfg.slab.top.density = rho;
        return layered_epfa_energy(cfg, p).newtons();
    };
    const double top0 = with_top(0.0);
    CHECK(relative_error(with_top(19280.0) - top0, 2.0 * (with_top(9640.0) - top0)) <= 1e-12);
}

TEST_CASE("PFA terms") {
    for (double l : {50e-9, 1e-6, 3e-4}) {
        const YukawaParams p{1.0, l};
        const LayeredConfig cfg = coated();
        const auto terms = layered_pfa_terms(cfg, p);
        const auto& s = cfg.slab;
        const auto& sp = cfg.sphere;
        const Layer rows[3] = {s.base, s.middle, s.top};
        const double row_depth[3] = {s.top.thickness + s.middle.thickness, s.top.thickness, 0.0};
        const MetaphysicalThickness cols[3] = {cfg.d2, MetaphysicalThickness::finite(sp.inner_coat.thickness),
                                               MetaphysicalThickness::finite(sp.outer_coat.thickness)};
        const double col_rho[3] = {sp.core_density, sp.inner_coat.density, sp.outer_coat.density};
        const double col_depth[3] = {sp.outer_coat.thickness + sp.inner_coat.thickness, sp.outer_coat.thickness,
                                     0.0};
        double total = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double gap = cfg.separation + row_depth[i] + col_depth[j];
                const double e = slab_slab_energy_per_area(gap, rows[i].thickness, rows[i].density, cols[j],
                                                           col_rho[j], p);
                CHECK(relative_error(terms[i][j].newtons(), 2.0 * pi * sp.core_radius * e) <= 1e-14);
                total += terms[i][j].newtons();
            }
        }
        CHECK(relative_error(layered_pfa_force(cfg, p).newtons(), total) <= 1e-14);
    }
}

TEST_CASE("eta_Delta") {
    SUBCASE("bare bodies give eta") {
        for (double l : {1e-9, 1e-6, 1e-3}) {
            LayeredConfig cfg = bare();
            cfg.d2 = MetaphysicalThickness::finite(100.0);
            const auto r = eta_delta(cfg, {1.0, l});
            CHECK(relative_error(r.eta_delta, eta(150e-6, cfg.d2, l).eta) <= 1e-14);
            CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
    SUBCASE("independent of the gap") {
        for (double l : {1e-9, 1e-7, 1e-5, 1e-3}) {
            const double e1 = eta_delta(coated(150e-6, 100e-9), {1.0, l}).eta_delta;
            const double e2 = eta_delta(coated(150e-6, 500e-9), {1.0, l}).eta_delta;
            CHECK(relative_error(e1, e2) <= 1e-12);
        }
    }
    SUBCASE("short-range limit") {
        const auto r = eta_delta(coated(150e-6), {1.0, 1e-11});
        CHECK(r.eta_delta == doctest::Approx(1.0 + 190e-9 / 150e-6).epsilon(1e-6));

        LayeredConfig decca = coated(151.3e-6);
        decca.d2 = MetaphysicalThickness::infinite();
        CHECK(std::abs(eta_delta(decca, {1.0, 0.1e-9}).eta_delta - 1.00126) <= 1e-4);
    }
    SUBCASE("coatings flatten the curve") {
        double prev = 0.0;
        for (int i = 0; i < 60; ++i) {
            const double l = 1e-9 * std::pow(1e6, i / 59.0);
            const auto r = eta_delta(coated(150e-6), {1.0, l});
            CHECK(r.ratio >= 1.0);
            CHECK(r.ratio >= prev * (1.0 - 1e-12));
            prev = r.ratio;
        }
    }
    CHECK(eta_delta(uniform(), {1.0, 1e-6}).eta_homogeneous ==
          doctest::Approx(eta(150.19e-6, MetaphysicalThickness::finite(100.0), 1e-6).eta).epsilon(1e-14));
}
