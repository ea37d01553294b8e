#include "squeeze/verification.hpp"

#include "squeeze/error.hpp"
#include "squeeze/format.hpp"
#include "squeeze/invariants.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>

namespace squeeze {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double two_pi = 2.0 * std::numbers::pi;

VerificationReport two_sided(std::string name, double observed, double expected, double tolerance,
                             std::string details = {}) {
    const bool ok = std::abs(observed - expected) <= tolerance;
    return {std::move(name), ok, observed, expected, tolerance, std::move(details)};
}

VerificationReport one_sided(std::string name, bool ok, double observed, double expected, double tolerance,
                             std::string details) {
    return {std::move(name), ok, observed, expected, tolerance, std::move(details)};
}

// Axis sizes for a uniform parameter grid of at most `budget` points. Axes are doubled in a
// fixed repeating order, so the grid for 2 * budget refines the grid for budget.
std::vector<std::size_t> grid_shape(std::span<const std::size_t> doubling_order, std::size_t axes,
                                    std::size_t budget) {
    std::vector<std::size_t> dims(axes, 1);
    std::size_t total = 1;
    for (std::size_t step = 0; total * 2 <= budget; ++step) {
        dims[doubling_order[step % doubling_order.size()]] *= 2;
        total *= 2;
    }
    return dims;
}

// Calls visit(params) for every point of the left-aligned grid over [0, span_k).
template <class Visit>
void for_each_grid_point(std::span<const std::size_t> dims, std::span<const double> spans, Visit&& visit) {
    const std::size_t axes = dims.size();
    std::vector<std::size_t> idx(axes, 0);
    std::vector<double> x(axes, 0.0);
    for (;;) {
        for (std::size_t k = 0; k < axes; ++k)
            x[k] = spans[k] * static_cast<double>(idx[k]) / static_cast<double>(dims[k]);
        visit(std::span<const double>(x));
        std::size_t k = 0;
        while (k < axes && ++idx[k] == dims[k])
            idx[k++] = 0;
        if (k == axes)
            return;
    }
}

double max_pseudo_hyperbolic(const PolyPoint& z, std::span<const complex> w) {
    double m = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        m = std::max(m, pseudo_hyperbolic(z[j].value(), w[j]));
    return m;
}

MobiusMap random_mobius(Lcg64& rng) {
    const complex center = random_disk_point(rng, 0.9);
    return MobiusMap{DiskPoint::at(center), rng.uniform(0.0, two_pi)};
}

// Largest |S(phi(A), phi(z)) - S(A, z)| over the trials.
double invariance_deviation(std::size_t trials, std::uint64_t seed, int map_kind) {
    Lcg64 rng(seed);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const RandomPuncturedDisk sample = random_punctured_disk(rng);
        MobiusMap phi;
        if (map_kind == 0)
            phi = random_mobius(rng);
        else if (map_kind == 1)
            phi = MobiusMap{DiskPoint{}, rng.uniform(0.0, two_pi)};
        std::vector<DiskPoint> mapped;
        for (const DiskPoint& a : sample.domain.punctures())
            mapped.push_back(phi(a));
        const FinitePunctures image(std::move(mapped));
        const double before = squeezing_punctured_disk(sample.domain, sample.point).value;
        const double after = squeezing_punctured_disk(image, DiskPoint::at(phi(sample.point).value())).value;
        worst = std::max(worst, std::abs(after - before));
    }
    return worst;
}

struct TruncationStats {
    double max_disagreement = 0.0;
    double min_tail_margin = inf;     // tail pseudo-hyperbolic bound minus value
    double min_modulus_margin = inf;  // tail modulus minus value
    index_t max_index = 0;
};

template <class Domain, class Point, class Evaluate, class Sample>
TruncationStats truncation_stats(const Domain& domain, std::size_t trials, Lcg64& rng, Evaluate&& evaluate,
                                 Sample&& sample_point) {
    TruncationStats s;
    for (std::size_t t = 0; t < trials; ++t) {
        const Point z = sample_point(rng);
        const InvariantValue v = evaluate(domain, z);
        const index_t n = v.truncation_index;
        const double brute = brute_force_infimum(domain, z, std::max<index_t>(10 * n, n + 1000));
        s.max_disagreement = std::max(s.max_disagreement, std::abs(brute - v.value));
        double zm;
        if constexpr (std::is_same_v<Point, DiskPoint>)
            zm = z.modulus();
        else
            zm = z.sup_modulus();
        s.min_tail_margin = std::min(s.min_tail_margin, radial_tail_bound(v.tail_bound_used, zm) - v.value);
        s.min_modulus_margin = std::min(s.min_modulus_margin, v.tail_bound_used - v.value);
        s.max_index = std::max(s.max_index, n);
    }
    return s;
}

void append_truncation_reports(std::vector<VerificationReport>& out, const std::string& prefix,
                               const TruncationStats& s, std::size_t trials) {
    const std::string details = std::to_string(trials) + " points, largest truncation index " +
                                std::to_string(s.max_index);
    out.push_back(two_sided(prefix + ".agreement", s.max_disagreement, 0.0, 0.0, details));
    out.push_back(one_sided(prefix + ".tail_exceeds_value", s.min_tail_margin > 0.0, s.min_tail_margin, 0.0, 0.0,
                            "smallest (tail bound - value); must be > 0"));
    out.push_back(one_sided(prefix + ".tail_modulus_exceeds_value", s.min_modulus_margin > 0.0, s.min_modulus_margin,
                            0.0, 0.0, "smallest (tail modulus - value); must be > 0"));
}

void append_boundary_case(std::vector<VerificationReport>& out, const std::string& name, BlockShape shape,
                          const Block& block, const PolyPoint& z, std::size_t samples,
                          std::optional<double> exact = std::nullopt) {
    const RemovedBlocks domain = RemovedBlocks::from_blocks(shape, z.dimension(), {block});
    const InvariantValue v = polydisk_squeezing_removed_blocks(domain, z);
    const double oracle = boundary_min_oracle(shape, block, z, samples);
    const std::string details = "value " + format_double(v.value) + ", mesh_error " + format_double(v.mesh_error);
    out.push_back(two_sided(name + ".oracle_agreement", oracle, v.value, 1e-4, details));
    out.push_back(one_sided(name + ".oracle_above_lower_bracket", oracle >= v.value - v.mesh_error, oracle,
                            v.value - v.mesh_error, 0.0, "oracle must not undercut value - mesh_error"));
    out.push_back(one_sided(name + ".mesh_error", v.mesh_error <= 1e-6, v.mesh_error, 0.0, 1e-6,
                            "mesh error after refinement"));
    if (exact)
        out.push_back(two_sided(name + ".exact", v.value, *exact, 1e-6, details));
}

} // namespace

complex random_disk_point(Lcg64& rng, double radius) {
    const double r = radius * std::sqrt(rng.uniform());
    return std::polar(r, rng.uniform(0.0, two_pi));
}

RandomPuncturedDisk random_punctured_disk(Lcg64& rng) {
    for (;;) {
        const auto count = rng.integer(1, 8);
        std::vector<DiskPoint> punctures;
        for (std::uint64_t i = 0; i < count; ++i)
            punctures.push_back(DiskPoint::at(random_disk_point(rng, 0.95)));
        bool separated = true;
        for (std::size_t i = 0; i < punctures.size() && separated; ++i)
            for (std::size_t j = 0; j < i; ++j)
                separated = separated && std::abs(punctures[i].value() - punctures[j].value()) > 1e-12;
        if (!separated)
            continue;
        for (;;) {
            const complex z = random_disk_point(rng, 0.9);
            const bool clear = std::all_of(punctures.begin(), punctures.end(),
                                           [&](const DiskPoint& a) { return std::abs(a.value() - z) > 1e-3; });
            if (clear)
                return {FinitePunctures(std::move(punctures)), DiskPoint::at(z)};
        }
    }
}

std::string format_reports_text(const std::vector<VerificationReport>& reports) {
    std::string out;
    for (const VerificationReport& r : reports) {
        out += r.check_name;
        out += '\t';
        out += r.passed ? "PASS" : "FAIL";
        out += '\t' + format_double(r.observed) + '\t' + format_double(r.expected) + '\t' + format_double(r.tolerance);
        out += '\n';
    }
    return out;
}

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const VerificationReport& r : reports) {
        out.push_back({{"check_name", r.check_name},
                       {"passed", r.passed},
                       {"observed", r.observed},
                       {"expected", r.expected},
                       {"tolerance", r.tolerance},
                       {"details", r.details}});
    }
    return out;
}

std::vector<VerificationReport> reports_from_json(const nlohmann::json& doc) {
    std::vector<VerificationReport> out;
    for (const auto& r : doc) {
        out.push_back({r.at("check_name").get<std::string>(), r.at("passed").get<bool>(), r.at("observed").get<double>(),
                       r.at("expected").get<double>(), r.at("tolerance").get<double>(),
                       r.at("details").get<std::string>()});
    }
    return out;
}

double brute_force_infimum(const SequencePunctures& domain, const DiskPoint& z, index_t count) {
    if (count < 1)
        throw Error(ErrorCode::usage, "brute force needs at least one term");
    double m = inf;
    for (index_t k = 1; k <= count; ++k)
        m = std::min(m, pseudo_hyperbolic(z, domain.puncture_at(k)));
    return m;
}

double brute_force_infimum(const PolySequencePunctures& domain, const PolyPoint& z, index_t count) {
    if (count < 1)
        throw Error(ErrorCode::usage, "brute force needs at least one term");
    double m = inf;
    for (index_t k = 1; k <= count; ++k)
        m = std::min(m, polydisk_caratheodory_tanh(z, domain.puncture_at(k)));
    return m;
}

double boundary_min_oracle(BlockShape shape, const Block& block, const PolyPoint& z, std::size_t samples) {
    const std::size_t n = z.dimension();
    if (block.center.dimension() != n)
        throw Error(ErrorCode::usage, "block and point dimensions differ");
    std::vector<complex> w(n);
    double best = inf;

    if (shape == BlockShape::polydisk) {
        // Face j: w_j on the circle (angle axis 0, refined twice as often); every other
        // coordinate on the closed disk via (radius fraction, angle) axes.
        const std::size_t axes = 1 + 2 * (n - 1);
        std::vector<std::size_t> order{0, 0};
        for (std::size_t k = 1; k < axes; ++k)
            order.push_back(k);
        const auto dims = grid_shape(order, axes, std::max<std::size_t>(1, samples / n));
        std::vector<double> spans(axes, two_pi);
        for (std::size_t k = 1; k < axes; k += 2)
            spans[k] = 1.0;
        for (std::size_t face = 0; face < n; ++face) {
            for_each_grid_point(dims, spans, [&](std::span<const double> x) {
                std::size_t axis = 1;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == face) {
                        w[j] = block.center[j].value() + std::polar(block.radius, x[0]);
                    } else {
                        w[j] = block.center[j].value() + std::polar(block.radius * x[axis], x[axis + 1]);
                        axis += 2;
                    }
                }
                best = std::min(best, max_pseudo_hyperbolic(z, w));
            });
        }
        return best;
    }

    // Ball: n - 1 spherical angles in [0, pi/2) followed by n phases.
    const std::size_t axes = 2 * n - 1;
    std::vector<std::size_t> order(axes);
    for (std::size_t k = 0; k < axes; ++k)
        order[k] = k;
    const auto dims = grid_shape(order, axes, std::max<std::size_t>(1, samples));
    std::vector<double> spans(axes, two_pi);
    for (std::size_t k = 0; k + 1 < n; ++k)
        spans[k] = std::numbers::pi / 2.0;
    for_each_grid_point(dims, spans, [&](std::span<const double> x) {
        double carry = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            double s = carry;
            if (j + 1 < n) {
                s = carry * std::cos(x[j]);
                carry *= std::sin(x[j]);
            }
            w[j] = block.center[j].value() + std::polar(block.radius * s, x[n - 1 + j]);
        }
        best = std::min(best, max_pseudo_hyperbolic(z, w));
    });
    return best;
}

std::vector<VerificationReport> invariance_suite(std::size_t trials, std::uint64_t seed) {
    if (trials < 1)
        throw Error(ErrorCode::usage, "invariance suite needs at least one trial");
    const std::string details = std::to_string(trials) + " trials, seed " + std::to_string(seed);
    std::vector<VerificationReport> out;
    out.push_back(two_sided("invariance.mobius", invariance_deviation(trials, seed, 0), 0.0, 1e-12, details));
    out.push_back(two_sided("invariance.rotation", invariance_deviation(trials, seed, 1), 0.0, 1e-14, details));
    out.push_back(two_sided("invariance.identity", invariance_deviation(trials, seed, 2), 0.0, 0.0, details));
    return out;
}

std::vector<VerificationReport> truncation_suite(std::size_t trials, std::uint64_t seed) {
    if (trials < 1)
        throw Error(ErrorCode::usage, "truncation suite needs at least one trial");
    std::vector<VerificationReport> out;
    Lcg64 rng(seed);
    auto disk_point = [](Lcg64& g) { return DiskPoint::at(random_disk_point(g, 0.9)); };
    auto disk_eval = [](const SequencePunctures& d, const DiskPoint& z) { return squeezing_punctured_disk(d, z); };

    const auto radial = SequencePunctures::from_family(RadialFamily{0.5, 1.0});
    append_truncation_reports(out, "truncation.radial",
                              truncation_stats<SequencePunctures, DiskPoint>(radial, trials, rng, disk_eval, disk_point),
                              trials);

    const auto orbit = SequencePunctures::from_family(BoundaryOrbitFamily{0.5, 1.0, 1.0});
    append_truncation_reports(out, "truncation.boundary_orbit",
                              truncation_stats<SequencePunctures, DiskPoint>(orbit, trials, rng, disk_eval, disk_point),
                              trials);

    const auto poly = PolySequencePunctures::from_coordinates({RadialFamily{0.5, 1.0}, FixedCoordinate{DiskPoint{}}});
    append_truncation_reports(
        out, "truncation.poly_radial",
        truncation_stats<PolySequencePunctures, PolyPoint>(
            poly, trials, rng,
            [](const PolySequencePunctures& d, const PolyPoint& z) { return polydisk_squeezing_punctured(d, z); },
            [](Lcg64& g) {
                const complex c[2] = {random_disk_point(g, 0.9), random_disk_point(g, 0.9)};
                return PolyPoint::at(c);
            }),
        trials);
    return out;
}

std::vector<VerificationReport> boundary_oracle_suite(std::size_t samples) {
    std::vector<VerificationReport> out;
    const complex origin2[2] = {{0.0, 0.0}, {0.0, 0.0}};
    const Block centered{PolyPoint::at(origin2), 0.25};
    const complex zc[2] = {{0.5, 0.0}, {0.0, 0.0}};
    const PolyPoint z = PolyPoint::at(zc);

    append_boundary_case(out, "boundary.polydisk_centered", BlockShape::polydisk, centered, z, samples, 2.0 / 7.0);
    append_boundary_case(out, "boundary.ball_centered", BlockShape::ball, centered, z, samples, 2.0 / 7.0);

    const complex off_center[2] = {{0.2, 0.1}, {-0.1, 0.0}};
    const Block shifted{PolyPoint::at(off_center), 0.2};
    const complex zo[2] = {{-0.4, 0.3}, {0.1, -0.2}};
    append_boundary_case(out, "boundary.polydisk_offcenter", BlockShape::polydisk, shifted, PolyPoint::at(zo), samples);
    append_boundary_case(out, "boundary.ball_offcenter", BlockShape::ball, shifted, PolyPoint::at(zo), samples);

    const double coarse = boundary_min_oracle(BlockShape::ball, shifted, PolyPoint::at(zo), samples / 2);
    const double fine = boundary_min_oracle(BlockShape::ball, shifted, PolyPoint::at(zo), samples);
    out.push_back(one_sided("boundary.oracle_doubling", fine <= coarse, fine - coarse, 0.0, 0.0,
                            "oracle at 2s samples minus oracle at s samples; must be <= 0"));

    const RemovedBlocks domain = RemovedBlocks::from_blocks(BlockShape::polydisk, 2, {centered});
    out.push_back(two_sided("boundary.center_free_centered", center_free_polydisk_value(domain, z), 2.0 / 7.0, 1e-6,
                            "center-free closed form on the origin-centered block"));
    return out;
}

std::vector<VerificationReport> paper_claims_suite(std::uint64_t seed) {
    std::vector<VerificationReport> out;

    const CheckOutcome annulus = annulus_compact_removal_check(1'000'000);
    auto value_of = [](const CheckOutcome& c, const std::string& key) {
        for (const auto& [k, v] : c.values)
            if (k == key)
                return v;
        return std::numeric_limits<double>::quiet_NaN();
    };
    out.push_back(two_sided("claims.annulus.closed_disk_min_sampled", value_of(annulus, "sampled_min"), 2.0 / 7.0, 1e-9,
                            annulus.details));
    out.push_back(two_sided("claims.annulus.closed_disk_min_at_quarter", value_of(annulus, "min_at_w_quarter"),
                            2.0 / 7.0, 1e-15));
    out.push_back(two_sided("claims.annulus.value", value_of(annulus, "annulus_value"), 0.5, 0.0));
    out.push_back(two_sided("claims.annulus.gap", value_of(annulus, "gap"), 3.0 / 14.0, 1e-9));

    for (std::size_t n : {2U, 4U}) {
        const std::string p = "claims.product_of_balls.n" + std::to_string(n);
        const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
        const ProductOfBalls domain{n};
        const BallProductPoint origin(n, std::vector<complex>(n));
        out.push_back(two_sided(p + ".S", product_of_balls_squeezing(domain, origin), inv_sqrt, 1e-15));
        out.push_back(two_sided(p + ".T_lower_bound", product_of_balls_T_lower_bound(domain), inv_sqrt, 1e-15));
        const CheckOutcome c = product_ratio_contradiction_check(n);
        const double t1 = value_of(c, "T_if_S_eq_T_over_n");
        const double t2 = value_of(c, "T_if_T_eq_S_over_n");
        out.push_back(one_sided(p + ".S_eq_T_over_n_rejected", t1 > 1.0, t1, 1.0, 0.0,
                                "hypothetical T = sqrt(n) must exceed 1"));
        out.push_back(one_sided(p + ".T_eq_S_over_n_rejected", t2 < inv_sqrt, t2, inv_sqrt, 0.0,
                                "hypothetical T = n^(-3/2) must fall below 1/sqrt(n)"));
    }

    {
        const complex pts[2] = {{0.5, 0.0}, {0.0, 0.5}};
        const FinitePunctures domain({DiskPoint::at(pts[0]), DiskPoint::at(pts[1])});
        out.push_back(two_sided("claims.finite.two_punctures_at_origin",
                                squeezing_punctured_disk(domain, DiskPoint{}).value, 0.5, 0.0));
    }

    Lcg64 rng(seed);
    {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const DiskPoint a = DiskPoint::at(random_disk_point(rng, 0.95));
            DiskPoint z = DiskPoint::at(random_disk_point(rng, 0.9));
            while (std::abs(z.value() - a.value()) <= 1e-3)
                z = DiskPoint::at(random_disk_point(rng, 0.9));
            const double s = squeezing_punctured_disk(FinitePunctures({a}), z).value;
            worst = std::max(worst, std::abs(s - pseudo_hyperbolic(z, a)));
        }
        out.push_back(two_sided("claims.finite.single_puncture", worst, 0.0, 1e-15, "100 random (a, z)"));
    }
    {
        double mismatches = 0.0;
        for (int t = 0; t < 100; ++t) {
            const RandomPuncturedDisk sample = random_punctured_disk(rng);
            const double s = squeezing_punctured_disk(sample.domain, sample.point).value;
            const double h = fridman_caratheodory_punctured_disk(sample.domain, sample.point).value;
            if (std::bit_cast<std::uint64_t>(s) != std::bit_cast<std::uint64_t>(h))
                mismatches += 1.0;
        }
        out.push_back(two_sided("claims.squeezing_equals_fridman", mismatches, 0.0, 0.0,
                                "bitwise mismatches over 100 random domains"));
    }
    {
        // Approach the first puncture of the radial family geometrically.
        const auto domain = SequencePunctures::from_family(RadialFamily{0.5, 1.0});
        const complex a1 = domain.puncture_at(1).value();
        const complex start{0.0, 0.0};
        bool bounded = true;
        double last = 1.0;
        for (int j = 1; j <= 40; ++j) {
            const DiskPoint z = DiskPoint::at(a1 + (start - a1) * std::ldexp(1.0, -j));
            const double s = squeezing_punctured_disk(domain, z).value;
            last = pseudo_hyperbolic(z.value(), a1);
            bounded = bounded && s <= last;
        }
        out.push_back(one_sided("claims.not_hhr.decay", bounded && last < 1e-6, last, 0.0, 1e-6,
                                "S(z_j) <= rho(z_j, a_1) along z_j -> a_1; bound after 40 halvings"));
    }
    return out;
}

std::vector<VerificationReport> run_suite(const std::string& name, std::uint64_t seed, std::size_t trials) {
    std::vector<VerificationReport> out;
    auto append = [&](std::vector<VerificationReport> more) {
        out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    };
    const bool all = name == "all";
    if (!all && name != "paper-claims" && name != "invariance" && name != "truncation" && name != "boundary-oracle")
        throw Error(ErrorCode::usage, "unknown suite \"" + name +
                                          "\" (expected paper-claims, invariance, truncation, boundary-oracle or all)");
    if (all || name == "paper-claims")
        append(paper_claims_suite(seed));
    if (all || name == "invariance")
        append(invariance_suite(trials, seed));
    if (all || name == "truncation")
        append(truncation_suite(std::min<std::size_t>(trials, 1000), seed));
    if (all || name == "boundary-oracle")
        append(boundary_oracle_suite());
    std::stable_sort(out.begin(), out.end(),
                     [](const VerificationReport& a, const VerificationReport& b) { return a.check_name < b.check_name; });
    return out;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.passed; });
}

} // namespace squeeze
