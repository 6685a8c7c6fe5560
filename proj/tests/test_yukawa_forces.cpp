#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "reference_values.hpp"
#include "ypfa/yukawa_forces.hpp"

using namespace ypfa;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

constexpr double pi = std::numbers::pi;
const PhysicalConstants C;

double phi_50(double u_in) {
    const Big u = u_in;
    const Big v = 1 - 2 / u + exp(-u) * (1 + 2 / u);
    return v.convert_to<double>();
}

SphereSlabConfig body(double a = 100e-9) { return {a, 150e-6, 19280.0, 3.5e-6, 2330.0}; }

}  // namespace

TEST_CASE("point pair energy") {
    const double l = 3e-6;
    CHECK(yukawa_pair_energy(1.0, 1.0, l, {1.0, l}) == doctest::Approx(-C.G * std::exp(-1.0) / l).epsilon(1e-15));
    CHECK(yukawa_pair_energy(2.0, 5.0, 1e-6, {0.0, l}) == 0.0);
    CHECK(yukawa_pair_energy(1.0, 1.0, 1e-6, {1.0, 1e-7}) ==
          doctest::Approx(ref::pair_energy_1um_100nm).epsilon(1e-14));
    CHECK_THROWS_AS(yukawa_pair_energy(1.0, 1.0, 0.0, {1.0, l}), InputError);
    CHECK_THROWS_AS(yukawa_pair_energy(1.0, 1.0, -1e-6, {1.0, l}), InputError);
}

TEST_CASE("slab-slab pressure") {
    const YukawaParams p{1.0, 500e-9};
    const auto d2 = MetaphysicalThickness::finite(1e-6);
    CHECK(slab_slab_pressure(100e-9, 3.5e-6, 2330.0, d2, 19280.0, p) ==
          doctest::Approx(ref::slab_pressure).epsilon(1e-14));

    const double thick = slab_slab_pressure(100e-9, 1.0, 2330.0, MetaphysicalThickness::infinite(), 19280.0, p);
    const double surface = -2.0 * pi * C.G * 2330.0 * 19280.0 * p.lambda * p.lambda * std::exp(-100e-9 / p.lambda);
    CHECK(thick == doctest::Approx(surface).epsilon(1e-15));

    const double sliver = slab_slab_pressure(100e-9, 1e-30, 2330.0, d2, 19280.0, p);
    CHECK(relative_error(sliver, thick * (1e-30 / p.lambda) * -std::expm1(-2.0)) <= 1e-14);

    // P = -dE/da
    const double a = 300e-9, h = a * 1e-5;
    const double e_hi = slab_slab_energy_per_area(a + h, 3.5e-6, 2330.0, d2, 19280.0, p);
    const double e_lo = slab_slab_energy_per_area(a - h, 3.5e-6, 2330.0, d2, 19280.0, p);
    CHECK(-(e_hi - e_lo) / (2.0 * h) ==
          doctest::Approx(slab_slab_pressure(a, 3.5e-6, 2330.0, d2, 19280.0, p)).epsilon(1e-8));
    CHECK_THROWS_AS(slab_slab_pressure(0.0, 1e-6, 1.0, d2, 1.0, p), InputError);
}

TEST_CASE("sphere shape factor") {
    CHECK(sphere_shape_factor(2.0).value == doctest::Approx(ref::two_over_e2).epsilon(1e-15));
    CHECK(sphere_shape_factor(5e-4).regime == EtaRegime::series_small_u);
    CHECK(sphere_shape_factor(2e-3).regime == EtaRegime::direct);

    SUBCASE("series and direct agree where both apply") {
        for (double u = 1e-4; u <= 1e-2 * (1 + 1e-12); u *= std::pow(10.0, 0.05)) {
            const double s = sphere_shape_factor_series(u);
            const double d = sphere_shape_factor_direct(u);
            CHECK(relative_error(s, d) <= 1e-12);
        }
    }
    SUBCASE("against 50-digit evaluation") {
        for (double u = 1e-7; u < 1e3; u *= std::pow(10.0, 0.1)) {
            CHECK(relative_error(sphere_shape_factor(u).value, phi_50(u)) <= 1e-13);
        }
        CHECK(sphere_shape_factor(1e4).value == doctest::Approx(1.0 - 2e-4).epsilon(1e-15));
    }
    CHECK(sphere_shape_factor(1e-6).value == doctest::Approx(1e-12 / 6.0).epsilon(1e-6));
}

TEST_CASE("exact sphere-slab force") {
    const YukawaParams p{1.0, 100e-9};
    CHECK(sphere_slab_force_exact(body(), p).newtons() == doctest::Approx(ref::sphere_slab_force_a).epsilon(1e-13));
    CHECK(sphere_slab_force_exact({200e-9, 10e-6, 4100.0, 1e-6, 7140.0}, {1.0, 2e-6}).newtons() ==
          doctest::Approx(ref::sphere_slab_force_b).epsilon(1e-13));

    // exp(-a/lambda) is carried in log_scale, so tiny ranges stay finite
    const ForceValue deep = sphere_slab_force_exact(body(1e-6), {1.0, 1e-10});
    CHECK(deep.newtons() == 0.0);
    CHECK(std::isfinite(deep.log_magnitude()));
    CHECK(deep.sign() == -1);
    CHECK(ratio(deep, sphere_slab_force_pfa(body(1e-6), MetaphysicalThickness::infinite(), {1.0, 1e-10})) ==
          doctest::Approx(1.0 - 1e-10 / 150e-6).epsilon(1e-15));

    SphereSlabConfig empty = body();
    empty.sphere_density = 0.0;
    CHECK(sphere_slab_force_exact(empty, p).newtons() == 0.0);
}

TEST_CASE("linearity in alpha and densities") {
    const YukawaParams p{1.0, 1e-6};
    const double f = sphere_slab_force_exact(body(), p).newtons();
    CHECK(sphere_slab_force_exact(body(), {2.0, 1e-6}).newtons() == 2.0 * f);
    CHECK(sphere_slab_force_exact(body(), {-0.5, 1e-6}).newtons() == -0.5 * f);
    SphereSlabConfig b = body();
    b.sphere_density *= 4.0;
    CHECK(sphere_slab_force_exact(b, p).newtons() == 4.0 * f);
    b = body();
    b.slab_density *= 2.0;
    CHECK(sphere_slab_force_exact(b, p).newtons() == 2.0 * f);
    b.slab_density = body().slab_density * 3.0;
    CHECK(sphere_slab_force_exact(b, p).newtons() == doctest::Approx(3.0 * f).epsilon(1e-15));

    const auto inf = MetaphysicalThickness::infinite();
    const double g = sphere_slab_force_pfa(body(), inf, p).newtons();
    CHECK(sphere_slab_force_pfa(body(), inf, {8.0, 1e-6}).newtons() == 8.0 * g);
}

TEST_CASE("PFA force") {
    const auto inf = MetaphysicalThickness::infinite();
    for (double l : {1e-9, 1e-7, 1e-5, 1e-3}) {
        const YukawaParams p{1.0, l};
        const ForceValue exact = sphere_slab_force_exact(body(), p);
        const ForceValue pfa = sphere_slab_force_pfa(body(), inf, p);
        CHECK(std::abs(ratio(exact, pfa)) <= 1.0);
        CHECK(relative_error(ratio(exact, pfa), eta(150e-6, inf, l).eta) <= 1e-14);

        const auto d2 = MetaphysicalThickness::finite(20e-6);
        CHECK(relative_error(ratio(exact, sphere_slab_force_pfa(body(), d2, p)), eta(150e-6, d2, l).eta) <= 1e-14);

        const double e_pp = slab_slab_energy_per_area(100e-9, 3.5e-6, 2330.0, inf, 19280.0, p);
        CHECK(relative_error(pfa.newtons(), pfa_force_from_energy(e_pp, 150e-6)) <= 1e-14);
    }
    const YukawaParams short_range{1.0, 1e-9};
    CHECK(ratio(sphere_slab_force_exact(body(), short_range), sphere_slab_force_pfa(body(), inf, short_range)) ==
          doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("eta") {
    const auto inf = MetaphysicalThickness::infinite();
    CHECK(eta(150e-6, inf, 150e-6).eta == doctest::Approx(ref::two_over_e2).epsilon(1e-15));
    CHECK(eta(150e-6, inf, 1e-12).eta == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(eta(150e-6, MetaphysicalThickness::finite(1e-6), 1e-12).eta == doctest::Approx(1.0).epsilon(1e-8));

    SUBCASE("bounded and decreasing over 1 nm to 1 mm") {
        double prev = 2.0;
        for (int i = 0; i < 200; ++i) {
            const double l = 1e-9 * std::pow(1e6, i / 199.0);
            const double e = eta(150e-6, inf, l).eta;
            CHECK(e > 0.0);
            CHECK(e <= 1.0);
            CHECK(e < prev);
            prev = e;
        }
    }
    SUBCASE("independent of the gap") {
        for (double l : {20e-9, 2e-6, 5e-3}) {
            const YukawaParams p{1.0, l};
            const double e = eta(150e-6, inf, l).eta;
            for (double a : {50e-9, 200e-9, 1e-6}) {
                CHECK(relative_error(ratio(sphere_slab_force_exact(body(a), p),
                                           sphere_slab_force_pfa(body(a), inf, p)),
                                     e) <= 1e-12);
            }
        }
    }
    SUBCASE("thin plate pushes eta above one") {
        const double l = 1e-9;
        CHECK(eta(150e-6, MetaphysicalThickness::finite(10.0 * l), l).eta > 1.0);
        CHECK(eta(150e-6, MetaphysicalThickness::finite(l), l).eta > 1.5);
    }
    SUBCASE("long-range slope") {
        const double r = 150e-6;
        const double l1 = 1e3 * r, l2 = 1e4 * r;
        const double e1 = eta(r, inf, l1).eta, e2 = eta(r, inf, l2).eta;
        CHECK(std::log(e2 / e1) / std::log(l2 / l1) == doctest::Approx(-2.0).epsilon(0.01));
        CHECK(e2 == doctest::Approx(std::pow(2.0 * r / l2, 2) / 6.0).epsilon(1e-3));
        CHECK(eta(r, inf, l2).regime == EtaRegime::series_small_u);
    }
    CHECK_THROWS_AS(eta(0.0, inf, 1e-6), InputError);
    CHECK_THROWS_AS(eta(1e-6, inf, 0.0), InputError);
}

TEST_CASE("parallel-plate mappings") {
    CHECK(pfa_force_from_energy(0.0, 150e-6) == 0.0);
    CHECK(pfa_force_from_energy(1e-9, 150e-6) == doctest::Approx(2.0 * pi * 1.5e-13).epsilon(1e-15));
    CHECK_THROWS_AS(pfa_force_from_energy(1.0, 0.0), InputError);

    const ResonatorParams res{1e-9, {151.3e-6, 151.3e-6}};
    CHECK(pressure_from_frequency_shift(0.0, res) == 0.0);
    CHECK(pressure_from_frequency_shift(1.0, res) == doctest::Approx(2.0 * pi * 1e-9 / 151.3e-6).epsilon(1e-14));
    for (double pr : {1e-3, 0.37, 42.0}) {
        CHECK(pressure_from_frequency_shift(frequency_shift_from_pressure(pr, res), res) ==
              doctest::Approx(pr).epsilon(1e-14));
    }
    CHECK_THROWS_AS(pressure_from_frequency_shift(1.0, ResonatorParams{0.0, {1e-6, 1e-6}}), InputError);
}
