// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

#include "cli.hpp"

#include "squeeze/error.hpp"
#include "squeeze/format.hpp"
#include "squeeze/invariants.hpp"
#include "squeeze/verification.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace squeeze;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool passed;
    std::string detail;
};

double value_of(const CheckOutcome& c, const std::string& name) {
    for (const auto& [key, value] : c.values)
        if (key == name)
            return value;
    return std::nan("");
}

std::string show(double v) { return format_double(v); }

Verdict annulus_counterexample() {
    const double analytic = pseudo_hyperbolic(complex{0.5, 0.0}, complex{0.25, 0.0});
    const CheckOutcome sampled = annulus_compact_removal_check(1'000'000);
    const double oracle = value_of(sampled, "sampled_min");
    const double annulus = annulus_squeezing(Annulus{0.25}, DiskPoint::at(0.5, 0.0));
    const double gap = value_of(sampled, "gap");
    const bool ok = std::abs(analytic - 2.0 / 7.0) <= 1e-15 && std::abs(oracle - 2.0 / 7.0) <= 1e-4 &&
                    annulus == 0.5 && std::abs(gap - 3.0 / 14.0) <= 1e-15 && sampled.passed;
    return {ok, "min at w=1/4 " + show(analytic) + ", sampled " + show(oracle) + ", annulus " + show(annulus) +
                    ", gap " + show(gap)};
}

Verdict product_of_balls() {
    bool ok = true;
    std::string detail;
    for (std::size_t n : {2, 4}) {
        const BallProductPoint origin(n, std::vector<complex>(n, 0.0));
        const double s = product_of_balls_squeezing(ProductOfBalls{n}, origin);
        const double t = product_of_balls_T_lower_bound(ProductOfBalls{n});
        const double expected = 1.0 / std::sqrt(static_cast<double>(n));
        const CheckOutcome c = product_ratio_contradiction_check(n);
        // S = T/n would force T = sqrt(n) > 1; T = S/n would put T = n^{-3/2} below its lower bound.
        const bool rejected = value_of(c, "T_if_S_eq_T_over_n") > 1.0 && value_of(c, "T_if_T_eq_S_over_n") < t;
        ok = ok && std::abs(s - expected) <= 1e-15 && std::abs(t - expected) <= 1e-15 && rejected && c.passed;
        detail += "n=" + std::to_string(n) + " S " + show(s) + " T>= " + show(t) + "; ";
    }
    return {ok, detail + "both relations rejected"};
}

Verdict finite_case() {
    const FinitePunctures two({DiskPoint::at(0.5, 0.0), DiskPoint::at(0.0, 0.5)});
    const double s0 = squeezing_punctured_disk(two, DiskPoint::at(0.0, 0.0)).value;
    Lcg64 rng(42);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const complex a = random_disk_point(rng, 0.95);
        complex z = random_disk_point(rng, 0.9);
        while (std::abs(z - a) <= 1e-3)
            z = random_disk_point(rng, 0.9);
        const FinitePunctures one({DiskPoint::at(a)});
        const double s = squeezing_punctured_disk(one, DiskPoint::at(z)).value;
        const double direct = std::abs((a - z) / (1.0 - std::conj(z) * a));
        worst = std::max(worst, std::abs(s - direct));
    }
    return {s0 == 0.5 && worst <= 1e-15, "S(0) " + show(s0) + ", worst single-puncture deviation " + show(worst)};
}

Verdict truncation_soundness() {
    const auto radial = SequencePunctures::from_family(RadialFamily{0.5, 1.0});
    Lcg64 rng(42);
    bool ok = true;
    index_t deepest = 0;
    for (int i = 0; i < 100; ++i) {
        const DiskPoint z = DiskPoint::at(random_disk_point(rng, 0.9));
        const InvariantValue v = squeezing_punctured_disk(radial, z);
        deepest = std::max(deepest, v.truncation_index);
        const double brute = brute_force_infimum(radial, z, std::max<index_t>(1000, 10 * v.truncation_index));
        ok = ok && v.value == brute && v.tail_bound_used > v.value;
    }
    return {ok, "100 points, deepest truncation index " + std::to_string(deepest)};
}

Verdict mobius_invariance() {
    const auto reports = invariance_suite(1000, 42);
    double worst = 0.0;
    bool ok = !reports.empty();
    for (const auto& r : reports) {
        ok = ok && r.passed && r.tolerance <= 1e-12;
        if (r.check_name == "invariance.mobius")
            worst = r.observed;
    }
    return {ok, "1000 trials, max deviation " + show(worst)};
}

Verdict squeezing_equals_fridman() {
    Lcg64 rng(42);
    int equal = 0;
    for (int i = 0; i < 100; ++i) {
        const RandomPuncturedDisk d = random_punctured_disk(rng);
        const double s = squeezing_punctured_disk(d.domain, d.point).value;
        const double h = fridman_caratheodory_punctured_disk(d.domain, d.point).value;
        equal += std::bit_cast<std::uint64_t>(s) == std::bit_cast<std::uint64_t>(h);
    }
    return {equal == 100, std::to_string(equal) + "/100 bitwise equal"};
}

Verdict block_boundary() {
    const std::vector<complex> zero{{0, 0}, {0, 0}}, z{{0.5, 0}, {0, 0}};
    bool ok = true;
    std::string detail;
    for (BlockShape shape : {BlockShape::polydisk, BlockShape::ball}) {
        const auto d = RemovedBlocks::from_blocks(shape, 2, {Block{PolyPoint::at(zero), 0.25}});
        const InvariantValue v = polydisk_squeezing_removed_blocks(d, PolyPoint::at(z));
        const double display = shape == BlockShape::polydisk ? center_free_polydisk_value(d, PolyPoint::at(z))
                                                             : center_free_ball_value(d, PolyPoint::at(z)).value;
        const double oracle = boundary_min_oracle(shape, d.blocks()[0], PolyPoint::at(z), 1'000'000);
        ok = ok && std::abs(v.value - 2.0 / 7.0) <= 1e-6 && v.mesh_error <= 1e-6 &&
             std::abs(display - v.value) <= 1e-6 && std::abs(oracle - 2.0 / 7.0) <= 1e-4;
        detail += std::string(shape == BlockShape::polydisk ? "polydisk " : "ball ") + show(v.value) + " (mesh " +
                  show(v.mesh_error) + "); ";
    }
    // Off-center regression: the display formula has no access to the block center.
    const std::vector<complex> c{{0.4, 0}, {0, 0}}, w{{-0.5, 0}, {0, 0}};
    const auto shifted = RemovedBlocks::from_blocks(BlockShape::polydisk, 2, {Block{PolyPoint::at(c), 0.25}});
    const double rigorous = polydisk_squeezing_removed_blocks(shifted, PolyPoint::at(w)).value;
    const double display = center_free_polydisk_value(shifted, PolyPoint::at(w));
    const double expected = pseudo_hyperbolic(complex{-0.5, 0.0}, complex{0.15, 0.0});
    ok = ok && std::abs(rigorous - expected) <= 1e-6 && std::abs(display - rigorous) > 0.1;
    return {ok, detail + "off-center rigorous " + show(rigorous) + " vs display " + show(display)};
}

Verdict not_hhr() {
    const auto radial = SequencePunctures::from_family(RadialFamily{0.5, 1.0});
    const complex a1 = radial.puncture_at(1).value();
    complex z = 0.0;
    bool bounded = true;
    double last = 1.0;
    int first_small = -1;
    for (int step = 1; step <= 40; ++step) {
        z = a1 + 0.5 * (z - a1);
        const double bound = pseudo_hyperbolic(z, a1);
        const double s = squeezing_punctured_disk(radial, DiskPoint::at(z)).value;
        bounded = bounded && s <= bound;
        last = bound;
        if (first_small < 0 && bound < 1e-6)
            first_small = step;
    }
    return {bounded && first_small > 0,
            "bound below 1e-6 at step " + std::to_string(first_small) + ", final bound " + show(last)};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

Verdict grid_determinism() {
    const fs::path dir = fs::temp_directory_path() / "squeeze_acceptance";
    fs::create_directories(dir);
    const fs::path domain = dir / "orbit.json";
    std::ofstream(domain) << R"({"kind":"sequence","family":"boundary_orbit","c":0.5,"p":1,"theta":1})";
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream sink;
    auto grid = [&](const char* name, unsigned threads) {
        return cli::cmd_grid(domain.string(), "-1,1,-1,1", "100,100", "squeezing", (dir / name).string(), threads, sink);
    };
    const int rc = grid("serial_a.csv", 1) | grid("serial_b.csv", 1) | grid("parallel.csv", 8);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string a = slurp(dir / "serial_a.csv");
    const bool ok = rc == 0 && !a.empty() && a == slurp(dir / "serial_b.csv") && a == slurp(dir / "parallel.csv") &&
                    seconds < 5.0;
    fs::remove_all(dir);
    return {ok, std::to_string(a.size()) + " bytes, three runs in " + show(std::round(seconds * 1000) / 1000) + " s"};
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Verdict()>> criteria[] = {
        {"annulus counterexample (2/7, 1/2, gap 3/14)", annulus_counterexample},
        {"product of balls n=2,4", product_of_balls},
        {"finite punctures", finite_case},
        {"certified truncation soundness", truncation_soundness},
        {"Mobius invariance, 1000 trials", mobius_invariance},
        {"squeezing function equals Fridman invariant", squeezing_equals_fridman},
        {"block boundary minimization", block_boundary},
        {"decay toward a puncture", not_hhr},
        {"grid determinism", grid_determinism},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Verdict v{false, ""};
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.passed;
        std::cout << (v.passed ? "PASS" : "FAIL") << " criterion " << index << ": " << name << " -- " << v.detail
                  << '\n';
    }
    return failures == 0 ? 0 : 1;
}
