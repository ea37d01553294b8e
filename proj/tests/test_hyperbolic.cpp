#include "oracles.hpp"

#include "squeeze/error.hpp"
#include "squeeze/hyperbolic.hpp"
#include "squeeze/verification.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace squeeze;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::usage;
}

} // namespace

TEST_CASE("disk points reject the boundary and the outside") {
    CHECK(DiskPoint::at(0.3, 0.4).value() == complex{0.3, 0.4});
    CHECK(code_of([] { DiskPoint::at(1.0, 0.0); }) == ErrorCode::not_in_domain);
    CHECK(code_of([] { DiskPoint::at(0.0, 1.0 - 1e-13); }) == ErrorCode::not_in_domain);
    CHECK(code_of([] { DiskPoint::at(2.0, 0.0); }) == ErrorCode::not_in_domain);
    CHECK(code_of([] { DiskPoint::at(std::nan(""), 0.0); }) == ErrorCode::not_in_domain);
    CHECK_NOTHROW(DiskPoint::at(1.0 - 1e-11, 0.0));
}

TEST_CASE("polydisk points") {
    const std::vector<complex> coords{{0.1, 0.2}, {-0.5, 0.0}};
    const PolyPoint p = PolyPoint::at(coords);
    CHECK(p.dimension() == 2);
    CHECK(p[1].re() == -0.5);
    CHECK(p.sup_modulus() == doctest::Approx(0.5));
    const std::vector<complex> outside{{0.1, 0.2}, {1.0, 0.0}};
    CHECK(code_of([&] { PolyPoint::at(outside); }) == ErrorCode::not_in_domain);
    CHECK_THROWS_AS(PolyPoint(std::vector<DiskPoint>{}), Error);
}

TEST_CASE("Mobius map worked values") {
    SUBCASE("identity") {
        const MobiusMap id{DiskPoint::at(0.0, 0.0), 0.0};
        CHECK(mobius_apply(id, DiskPoint::at(0.3, 0.4)).value() == complex{0.3, 0.4});
    }
    SUBCASE("center goes to the origin") {
        const MobiusMap m{DiskPoint::at(0.5, 0.0), 0.0};
        CHECK(std::abs(mobius_apply(m, DiskPoint::at(0.5, 0.0)).value()) == 0.0);
    }
    SUBCASE("a quarter goes to minus two sevenths") {
        const MobiusMap m{DiskPoint::at(0.5, 0.0), 0.0};
        const complex v = mobius_apply(m, DiskPoint::at(0.25, 0.0)).value();
        CHECK(v.real() == doctest::Approx(-2.0 / 7.0).epsilon(1e-15));
        CHECK(v.imag() == 0.0);
    }
    SUBCASE("matches the defining formula") {
        Lcg64 rng(7);
        for (int i = 0; i < 200; ++i) {
            const complex a = random_disk_point(rng, 0.95);
            const complex p = random_disk_point(rng, 0.95);
            const double theta = rng.uniform(-4.0, 4.0);
            const complex got = mobius_apply(MobiusMap{DiskPoint::at(a), theta}, DiskPoint::at(p)).value();
            const complex want = std::polar(1.0, theta) * oracle::automorphism(a, p);
            CHECK(std::abs(got - want) < 1e-14);
        }
    }
    CHECK(code_of([] { mobius_apply(MobiusMap{DiskPoint::at(0.5, 0.0), 0.0}, DiskPoint::trusted({1.0, 0.0})); }) ==
          ErrorCode::not_in_domain);
}

TEST_CASE("pseudo-hyperbolic distance worked values") {
    CHECK(pseudo_hyperbolic(complex{0.0, 0.0}, complex{0.0, 0.7}) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(std::abs(pseudo_hyperbolic(complex{0.5, 0.0}, complex{0.25, 0.0}) - 2.0 / 7.0) < 1e-16);
    CHECK(pseudo_hyperbolic(complex{0.3, 0.1}, complex{0.3, 0.1}) == 0.0);
}

TEST_CASE("pseudo-hyperbolic distance properties") {
    Lcg64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const complex z = random_disk_point(rng, 0.99);
        const complex w = random_disk_point(rng, 0.99);
        const complex u = random_disk_point(rng, 0.99);
        const double d = pseudo_hyperbolic(z, w);
        CHECK(d == pseudo_hyperbolic(w, z));
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
        CHECK(std::abs(d - oracle::pseudo_hyperbolic(z, w)) < 1e-14);
        // Invariance under a random automorphism.
        const complex a = random_disk_point(rng, 0.9);
        CHECK(std::abs(pseudo_hyperbolic(oracle::automorphism(a, z), oracle::automorphism(a, w)) - d) < 1e-12);
        // The Poincare distance is a metric.
        CHECK(poincare_distance(DiskPoint::at(z), DiskPoint::at(u)) <=
              poincare_distance(DiskPoint::at(z), DiskPoint::at(w)) +
                  poincare_distance(DiskPoint::at(w), DiskPoint::at(u)) + 1e-12);
    }
}

TEST_CASE("sigma and its inverse") {
    CHECK(sigma(0.0) == 0.0);
    CHECK(sigma(0.5) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-15));
    CHECK(sigma(0.5) == doctest::Approx(0.5493061443340549).epsilon(1e-15));
    CHECK(sigma_inverse(sigma(0.9)) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(sigma_inverse(1.0) == doctest::Approx(std::tanh(1.0)));
    CHECK(code_of([] { sigma(1.0); }) == ErrorCode::usage);
    CHECK(code_of([] { sigma(-0.1); }) == ErrorCode::usage);

    double previous = -1.0;
    for (int i = 0; i < 1000; ++i) {
        const double s = sigma(i / 1000.0);
        CHECK(s > previous);
        previous = s;
    }
}

TEST_CASE("Poincare distance worked values") {
    const DiskPoint origin = DiskPoint::at(0.0, 0.0);
    CHECK(poincare_distance(origin, origin) == 0.0);
    CHECK(poincare_distance(origin, DiskPoint::at(0.0, std::tanh(1.0))) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(poincare_distance(origin, DiskPoint::at(0.5, 0.0)) == doctest::Approx(0.5493061443340549).epsilon(1e-15));
}

TEST_CASE("polydisk Caratheodory distance is the coordinate-wise maximum") {
    const std::vector<complex> zero{{0, 0}, {0, 0}}, w{{0.5, 0}, {0.25, 0}};
    CHECK(polydisk_caratheodory_tanh(PolyPoint::at(zero), PolyPoint::at(w)) == 0.5);
    const std::vector<complex> z2{{0.5, 0}, {0, 0}}, w2{{0.25, 0}, {0, 0}};
    CHECK(std::abs(polydisk_caratheodory_tanh(PolyPoint::at(z2), PolyPoint::at(w2)) - 2.0 / 7.0) < 1e-16);
    const std::vector<complex> one{{0.1, 0}};
    CHECK(code_of([&] { polydisk_caratheodory_tanh(PolyPoint::at(one), PolyPoint::at(zero)); }) == ErrorCode::usage);
}

TEST_CASE("radial tail bound") {
    CHECK(radial_tail_bound(0.75, 0.0) == 0.75);
    CHECK(radial_tail_bound(0.5, 0.6) == 0.0);
    CHECK(radial_tail_bound(0.9, 0.5) == doctest::Approx(0.4 / 0.55).epsilon(1e-15));

    // Every point of modulus at least m is at least the bound away from z.
    Lcg64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const complex z = random_disk_point(rng, 0.9);
        const double m = rng.uniform(std::abs(z), 1.0);
        const double bound = radial_tail_bound(m, std::abs(z));
        double sampled = 1.0;
        for (int i = 0; i < 10000; ++i)
            sampled = std::min(sampled, oracle::pseudo_hyperbolic(z, std::polar(m, 2.0 * std::numbers::pi * i / 10000)));
        CHECK(sampled >= bound - 1e-15);
        // The bound is attained on the ray through z.
        CHECK(sampled <= bound + 1e-6);
    }
}
