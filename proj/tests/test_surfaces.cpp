#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "mft/surfaces.hpp"
#include "oracle.hpp"

using namespace mft;

TEST_CASE("pseudosphere chart collapses at theta = 0", "[surfaces]") {
    const SurfaceFamily fam = SurfaceFamily::pseudosphere(1.0);
    const SurfaceJet sj = fam.eval_chart({0.3, 0.0});
    CHECK(sj.x1.value() == Catch::Approx(std::cos(0.3)).epsilon(1e-15));
    CHECK(sj.x2.value() == Catch::Approx(std::sin(0.3)).epsilon(1e-15));
    CHECK(sj.x3.value() == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("null-axis quadric satisfies <x,x> = sign * c^2", "[surfaces]") {
    const SurfaceFamily fam = SurfaceFamily::null_axis(KSpec::quadric(1.0, +1));
    const Vec3M x = fam.position<double>(0.5, 1.0);
    CHECK(inner(x, x, fam.signature()) == Catch::Approx(1.0).epsilon(1e-12));

    const SurfaceFamily neg = SurfaceFamily::null_axis(KSpec::quadric(1.0, -1));
    for (const ChartPoint p : mfttest::random_points(neg, 50, 11)) {
        const Vec3M y = neg.position<double>(p.s, p.theta);
        CHECK(inner(y, y, neg.signature()) == Catch::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("cubic null-axis chart value", "[surfaces]") {
    const SurfaceFamily fam = SurfaceFamily::cubic_null_minimal(1.0, 0.0);
    const SurfaceJet sj = fam.eval_chart({1.0, 0.0});
    CHECK(sj.x1.value() == Catch::Approx(0.0).margin(1e-15)); // k - s = 1 - 1
    CHECK(sj.x2.value() == Catch::Approx(2.0).epsilon(1e-15));
    CHECK(sj.x3.value() == Catch::Approx(0.0).margin(1e-15));
    CHECK_THROWS_AS(SurfaceFamily::cubic_null_minimal(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("quadric invariants hold along the profile", "[surfaces][property]") {
    const SurfaceFamily ps = SurfaceFamily::pseudosphere(1.0);
    const SurfaceFamily h2 = SurfaceFamily::hyperbolic_plane(1.0);
    for (int i = 0; i <= 40; ++i) {
        const double s = 0.1 + 1.3 * i / 40.0;
        const ProfileState a = ps.profile_state(s);
        CHECK(a.f * a.f + a.g * a.g == Catch::Approx(1.0).epsilon(1e-12));
        const ProfileState b = h2.profile_state(s);
        CHECK(b.g * b.g - b.f * b.f == Catch::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("excluded loci are rejected with named reasons", "[surfaces]") {
    const SurfaceFamily nullax = SurfaceFamily::null_axis(KSpec::quadric(1.0, -1));
    CHECK_THROWS_AS(nullax.eval_chart({0.0, 0.5}), OutOfDomain);

    // Non-finite points are rejected everywhere.
    CHECK_THROWS_AS(SurfaceFamily::pseudosphere(1.0).eval_chart(
                        {std::numeric_limits<double>::quiet_NaN(), 0.0}),
                    OutOfDomain);

    // sin(phi) = 0 on the circular profile at s where phi = pi, i.e. s = pi/2.
    const SurfaceFamily wide = SurfaceFamily::pseudosphere(1.0).with_domain({0.1, 3.0, -1, 1});
    CHECK_THROWS_AS(wide.eval_chart({1.5707963267948966, 0.2}), OutOfDomain);

    // Table families reject queries outside the tabulated range.
    const SurfaceFamily cat = SurfaceFamily::minimal_spacelike();
    CHECK_THROWS_AS(cat.eval_chart({7.0, 0.0}), OutOfDomain);
}

TEST_CASE("position values agree with jet values", "[surfaces]") {
    for (const SurfaceFamily& fam : mfttest::builtin_families()) {
        for (const ChartPoint p : mfttest::random_points(fam, 10, 42)) {
            const SurfaceJet sj = fam.eval_chart(p);
            const Vec3M x = fam.position<double>(p.s, p.theta);
            CHECK(sj.x1.value() == Catch::Approx(x.x1).margin(1e-14));
            CHECK(sj.x2.value() == Catch::Approx(x.x2).margin(1e-14));
            CHECK(sj.x3.value() == Catch::Approx(x.x3).margin(1e-14));
        }
    }
}

TEST_CASE("jet coefficients match the finite-difference oracle", "[surfaces][oracle]") {
    // First and second partials of every position component versus central
    // differences at h = 1e-5 (5-point stencils for the pure second
    // derivatives), relative 1e-6 with absolute floor 1e-8.
    unsigned seed = 1000;
    for (const SurfaceFamily& fam : mfttest::builtin_families()) {
        INFO("family " << fam.name());
        double worst = 0;
        for (const ChartPoint p : mfttest::random_points(fam, 100, seed++))
            worst = std::max(worst, mfttest::fd_oracle_worst(fam, p.s, p.theta));
        CHECK(worst < 1e-6);
    }
}
