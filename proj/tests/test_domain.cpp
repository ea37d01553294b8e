#include "squeeze/domain.hpp"
#include "squeeze/error.hpp"
#include "squeeze/verification.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

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

ErrorCode parse_code(const char* text) {
    return code_of([&] { parse_domain_spec(std::string_view(text)); });
}

} // namespace

TEST_CASE("finite punctures document") {
    const DomainSpec d = parse_domain_spec(R"({"kind":"finite_punctures","points":[[0.5,0],[0,0.5]]})");
    REQUIRE(std::holds_alternative<FinitePunctures>(d));
    const auto& f = std::get<FinitePunctures>(d);
    CHECK(f.size() == 2);
    CHECK(f.punctures()[1].value() == complex{0.0, 0.5});
    CHECK(domain_kind(d) == "finite_punctures");
}

TEST_CASE("radial family document") {
    const DomainSpec d = parse_domain_spec(R"({"kind":"sequence","family":"radial","q":0.5,"theta":1.0})");
    const auto& s = std::get<SequencePunctures>(d);
    // a_1 = (1 - 0.5) e^{i}
    CHECK(std::abs(s.puncture_at(1).value() - std::polar(0.5, 1.0)) < 1e-16);
    CHECK(std::abs(s.puncture_at(3).value() - std::polar(0.875, 3.0)) < 1e-15);
    CHECK(s.tail_lower_bound(0).modulus == 0.5);
    CHECK(s.tail_lower_bound(1).modulus == 0.75);
    CHECK_FALSE(s.tail_lower_bound(1).exhausted);
    // m(N) is the infimum of the moduli past N, checked against the points themselves. The
    // stored points are rounded, so their moduli may sit an ulp or two below the exact value.
    for (index_t n = 0; n < 40; ++n) {
        double inf = 1.0;
        for (index_t k = n + 1; k < n + 60; ++k)
            inf = std::min(inf, s.puncture_at(k).modulus());
        CHECK(s.tail_lower_bound(n).modulus <= inf + 1e-15);
        CHECK(s.tail_lower_bound(n).modulus == doctest::Approx(inf).epsilon(1e-15));
    }
}

TEST_CASE("boundary orbit family") {
    const auto s = SequencePunctures::from_family(BoundaryOrbitFamily{0.5, 1.0, 1.0});
    CHECK(s.puncture_at(2).modulus() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(s.tail_lower_bound(1).modulus == doctest::Approx(0.75).epsilon(1e-15));
    for (index_t n = 0; n < 1000; ++n)
        CHECK(s.tail_lower_bound(n).modulus <= s.puncture_at(n + 1).modulus() + 1e-15);
    CHECK(code_of([] { SequencePunctures::from_family(BoundaryOrbitFamily{1.5, 1.0, 0.0}); }) == ErrorCode::invariant);
    CHECK(code_of([] { SequencePunctures::from_family(BoundaryOrbitFamily{0.5, 0.0, 0.0}); }) == ErrorCode::invariant);
    CHECK(code_of([] { SequencePunctures::from_family(RadialFamily{1.0, 0.0}); }) == ErrorCode::invariant);
    // Far too slow to certify: m(10^6) stays below 1 - 1e-6.
    CHECK(code_of([] { SequencePunctures::from_family(BoundaryOrbitFamily{0.9, 0.1, 0.0}); }) == ErrorCode::invariant);
}

TEST_CASE("tail convergence check") {
    CHECK(check_tail_convergence(SequencePunctures::from_family(RadialFamily{0.5, 1.0})).empty());
    CHECK(check_tail_convergence(SequencePunctures::from_family(BoundaryOrbitFamily{0.5, 1.0, 1.0})).empty());
}

TEST_CASE("prefix-only sequences") {
    const auto s = SequencePunctures::from_prefix({DiskPoint::at(0.5, 0.0), DiskPoint::at(0.0, 0.6)});
    CHECK(s.puncture_at(2).value() == complex{0.0, 0.6});
    CHECK(code_of([&] { s.puncture_at(3); }) == ErrorCode::usage);
    CHECK(code_of([&] { s.puncture_at(0); }) == ErrorCode::usage);
    CHECK(s.tail_lower_bound(0).modulus == 0.0);
    CHECK(s.tail_lower_bound(2).exhausted);

    const auto t = SequencePunctures::from_prefix({DiskPoint::at(0.5, 0.0)}, 0.9);
    CHECK(t.tail_lower_bound(1).modulus == 0.9);
    CHECK_FALSE(t.tail_lower_bound(1).exhausted);
}

TEST_CASE("removed blocks validation") {
    CHECK_NOTHROW(parse_domain_spec(
        R"({"kind":"removed_polydisks","n":2,"blocks":[{"center":[[0,0],[0,0]],"radius":0.6}]})"));
    CHECK(parse_code(R"({"kind":"removed_polydisks","n":2,"blocks":[{"center":[[0,0],[0,0]],"radius":0.6},)"
                     R"({"center":[[0.3,0],[0,0]],"radius":0.1}]})") == ErrorCode::invariant);
    CHECK(parse_code(R"({"kind":"removed_polydisks","n":2,"blocks":[{"center":[[0.5,0],[0,0]],"radius":0.6}]})") ==
          ErrorCode::invariant);
    CHECK(parse_code(R"({"kind":"removed_balls","n":1,"blocks":[{"center":[[0,0]],"radius":0.2}]})") ==
          ErrorCode::invariant);
    CHECK(parse_code(R"({"kind":"removed_balls","n":2,"blocks":[{"center":[[0,0]],"radius":0.2}]})") !=
          ErrorCode::io);

    // Sup-norm separation versus Euclidean separation: these two balls are disjoint, the
    // polydisks with the same data are not.
    const char* diagonal = R"({"kind":"%s","n":2,"blocks":[{"center":[[0,0],[0,0]],"radius":0.2},)"
                           R"({"center":[[0.3,0],[0.3,0]],"radius":0.2}]})";
    char buf[256];
    std::snprintf(buf, sizeof buf, diagonal, "removed_balls");
    CHECK_NOTHROW(parse_domain_spec(std::string_view(buf)));
    std::snprintf(buf, sizeof buf, diagonal, "removed_polydisks");
    CHECK(parse_code(buf) == ErrorCode::invariant);
}

TEST_CASE("block membership") {
    const std::vector<complex> c{{0, 0}, {0, 0}}, p{{0.2, 0}, {0.2, 0}};
    const Block b{PolyPoint::at(c), 0.25};
    CHECK(block_contains(BlockShape::polydisk, b, PolyPoint::at(p)));
    CHECK_FALSE(block_contains(BlockShape::ball, b, PolyPoint::at(p)));
    const std::vector<complex> edge{{0.25, 0}, {0, 0}};
    CHECK(block_contains(BlockShape::ball, b, PolyPoint::at(edge)));
}

TEST_CASE("radial block family") {
    const auto d = RemovedBlocks::from_family(BlockShape::polydisk, 2, RadialBlockFamily{0.5, 1.0, 0.2});
    const Block b1 = d.block_at(1);
    CHECK(std::abs(b1.center[0].value() - std::polar(0.5, 1.0)) < 1e-16);
    CHECK(b1.center[1].value() == complex{0.0, 0.0});
    CHECK(b1.radius == doctest::Approx(0.1));
    // Every block past N stays outside the sup-norm ball of radius m(N).
    for (index_t n = 0; n < 30; ++n) {
        const double m = d.tail_lower_bound(n).modulus;
        for (index_t k = n + 1; k < n + 20; ++k) {
            const Block b = d.block_at(k);
            CHECK(b.center.sup_modulus() - b.radius >= m - 1e-15);
        }
    }
    CHECK(code_of([] { RemovedBlocks::from_family(BlockShape::polydisk, 2, RadialBlockFamily{0.5, 0.0, 0.5}); }) ==
          ErrorCode::invariant);
}

TEST_CASE("poly sequence documents") {
    const DomainSpec d = parse_domain_spec(
        R"({"kind":"poly_sequence","n":2,"coordinates":[{"family":"radial","q":0.5,"theta":1},{"point":[0,0]}]})");
    const auto& s = std::get<PolySequencePunctures>(d);
    CHECK(s.dimension() == 2);
    CHECK(s.puncture_at(1)[1].value() == complex{0, 0});
    CHECK(s.tail_lower_bound(1).modulus == 0.75);
    CHECK(parse_code(R"({"kind":"poly_sequence","n":2,"coordinates":[{"point":[0,0]},{"point":[0.1,0]}]})") ==
          ErrorCode::invariant);
    CHECK(parse_code(R"({"kind":"poly_sequence","n":3,"coordinates":[{"point":[0,0]}]})") == ErrorCode::invariant);
}

TEST_CASE("malformed documents are schema errors") {
    CHECK(parse_code("not json") == ErrorCode::schema);
    CHECK(parse_code("[]") == ErrorCode::schema);
    CHECK(parse_code(R"({"points":[[0,0]]})") == ErrorCode::schema);
    CHECK(parse_code(R"({"kind":"mystery"})") == ErrorCode::schema);
    CHECK(parse_code(R"({"kind":"finite_punctures","points":[[0,0,0]]})") == ErrorCode::schema);
    CHECK(parse_code(R"({"kind":"finite_punctures","points":[["a",0]]})") == ErrorCode::schema);
    CHECK(parse_code(R"({"kind":"finite_punctures","points":[[0,0]],"extra":1})") == ErrorCode::schema);
    CHECK(parse_code(R"({"kind":"sequence","family":"spiral","q":0.5})") == ErrorCode::schema);
    CHECK(parse_code(R"({"kind":"annulus"})") == ErrorCode::schema);
}

TEST_CASE("invalid documents are invariant errors") {
    CHECK(parse_code(R"({"kind":"finite_punctures","points":[]})") == ErrorCode::invariant);
    CHECK(parse_code(R"({"kind":"finite_punctures","points":[[0.1,0],[0.1,0]]})") == ErrorCode::invariant);
    CHECK(parse_code(R"({"kind":"finite_punctures","points":[[1,0]]})") != ErrorCode::schema);
    CHECK(parse_code(R"({"kind":"annulus","r":1.5})") == ErrorCode::invariant);
    CHECK(parse_code(R"({"kind":"product_of_balls","n":0})") == ErrorCode::invariant);
}

TEST_CASE("parse, serialize, parse is the identity") {
    const char* documents[] = {
        R"({"kind":"finite_punctures","points":[[0.5,0],[0,0.5]]})",
        R"({"kind":"finite_punctures","points":[[0.1234567890123,-0.2],[0.3,0.45]]})",
        R"({"kind":"sequence","family":"radial","q":0.5,"theta":1.0})",
        R"({"kind":"sequence","family":"boundary_orbit","c":0.3,"p":2,"theta":0.7})",
        R"({"kind":"sequence","points":[[0.5,0]],"tail_modulus_constant":0.8})",
        R"({"kind":"sequence","points":[[0.5,0],[0.1,0.1]]})",
        R"({"kind":"poly_sequence","n":2,"coordinates":[{"family":"radial","q":0.5,"theta":1},{"point":[0.1,0]}]})",
        R"({"kind":"poly_sequence","n":2,"points":[[[0.1,0],[0.2,0]]],"tail_modulus_constant":0.9})",
        R"({"kind":"removed_polydisks","n":2,"blocks":[{"center":[[0,0],[0,0]],"radius":0.25}]})",
        R"({"kind":"removed_balls","n":3,"blocks":[{"center":[[0.1,0],[0,0.1],[0,0]],"radius":0.2}]})",
        R"({"kind":"removed_polydisks","n":2,"family":"radial_blocks","q":0.5,"theta":1,"rho":0.2})",
        R"({"kind":"annulus","r":0.25})",
        R"({"kind":"product_of_balls","n":4})",
    };
    for (const char* text : documents) {
        CAPTURE(text);
        const DomainSpec first = parse_domain_spec(std::string_view(text));
        const nlohmann::json serialized = to_json(first);
        const DomainSpec second = parse_domain_spec(serialized);
        CHECK(first == second);
        CHECK(to_json(second) == serialized);
    }

    // Random finite domains survive the round trip bit for bit.
    Lcg64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const DomainSpec d = random_punctured_disk(rng).domain;
        CHECK(parse_domain_spec(to_json(d).dump()) == d);
    }
}

TEST_CASE("loading from disk") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "squeeze_domain_test.json";
    {
        std::ofstream f(path);
        f << R"({"kind":"annulus","r":0.25})";
    }
    CHECK(std::get<Annulus>(load_domain_spec(path.string())).inner_radius == 0.25);
    std::filesystem::remove(path);
    CHECK(code_of([&] { load_domain_spec(path.string()); }) == ErrorCode::io);
}
