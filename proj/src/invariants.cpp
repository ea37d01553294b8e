#include "squeeze/invariants.hpp"

#include "squeeze/error.hpp"
#include "squeeze/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace squeeze {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Computed moduli and distances carry a few ulps of rounding, so the tail has to clear the
// running minimum by more than that before the remaining terms are discarded.
constexpr double rounding_margin = 1e-15;

[[noreturn]] void coincident(index_t k) {
    throw Error(ErrorCode::not_in_domain, "point coincides with puncture " + std::to_string(k) +
                                              " (pseudo-hyperbolic distance below 1e-14)");
}

// Certified infimum of distance(k) over k >= 1. `tail(N)` bounds the modulus of every
// puncture beyond N; `available(k)` says whether puncture k can be generated.
template <class Distance, class Tail, class Available>
InvariantValue certified_infimum(Distance&& distance, Tail&& tail, Available&& available, double point_modulus,
                                 const EvaluationLimits& limits) {
    InvariantValue out;
    double running = inf;
    for (index_t k = 1;; ++k) {
        const double d = distance(k);
        if (d < coincidence_threshold)
            coincident(k);
        if (d < running) {
            running = d;
            out.argmin_index = k;
        }
        const TailBound t = tail(k);
        if (t.exhausted || radial_tail_bound(t.modulus, point_modulus) > running + rounding_margin) {
            out.value = running;
            out.truncation_index = k;
            out.tail_bound_used = t.exhausted ? 1.0 : t.modulus;
            return out;
        }
        if (!available(k + 1))
            throw Error(ErrorCode::uncertified,
                        "sequence exhausted without certification: tail bound " + format_double(t.modulus) +
                            " does not exclude values below the running minimum " + format_double(running));
        if (k >= limits.max_terms)
            throw Error(ErrorCode::uncertified, "no certificate within " + std::to_string(limits.max_terms) +
                                                    " terms (running minimum " + format_double(running) + ")");
    }
}

InvariantValue punctured_disk_kernel(const FinitePunctures& domain, const DiskPoint& z) {
    InvariantValue out;
    double running = inf;
    const auto pts = domain.punctures();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = pseudo_hyperbolic(z, pts[i]);
        if (d < coincidence_threshold)
            coincident(i + 1);
        if (d < running) {
            running = d;
            out.argmin_index = i + 1;
        }
    }
    out.value = running;
    return out;
}

InvariantValue punctured_disk_kernel(const SequencePunctures& domain, const DiskPoint& z,
                                     const EvaluationLimits& limits) {
    return certified_infimum([&](index_t k) { return pseudo_hyperbolic(z, domain.puncture_at(k)); },
                             [&](index_t n) { return domain.tail_lower_bound(n); },
                             [&](index_t k) { return domain.family().has_value() || k <= domain.prefix().size(); },
                             z.modulus(), limits);
}

void require_claim(double claimed) {
    if (!(claimed > 0.0 && claimed < 1.0))
        throw Error(ErrorCode::usage, "claimed lower bound must lie in (0, 1), got " + format_double(claimed));
}

constexpr double certificate_slack = 1e-12;

} // namespace

InvariantValue squeezing_punctured_disk(const FinitePunctures& domain, const DiskPoint& z) {
    return punctured_disk_kernel(domain, z);
}

InvariantValue squeezing_punctured_disk(const SequencePunctures& domain, const DiskPoint& z,
                                        const EvaluationLimits& limits) {
    return punctured_disk_kernel(domain, z, limits);
}

InvariantValue fridman_caratheodory_punctured_disk(const FinitePunctures& domain, const DiskPoint& z) {
    return punctured_disk_kernel(domain, z);
}

InvariantValue fridman_caratheodory_punctured_disk(const SequencePunctures& domain, const DiskPoint& z,
                                                   const EvaluationLimits& limits) {
    return punctured_disk_kernel(domain, z, limits);
}

CertificateOutcome lower_bound_certificate(const FinitePunctures& domain, const DiskPoint& z, double claimed) {
    require_claim(claimed);
    CertificateOutcome out;
    const auto pts = domain.punctures();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.examined = i + 1;
        const double image = pseudo_hyperbolic(z, pts[i]);
        if (image < claimed - certificate_slack) {
            out.violating_index = i + 1;
            out.details = "puncture " + std::to_string(i + 1) + " maps to modulus " + format_double(image);
            return out;
        }
    }
    out.passed = true;
    out.details = "all " + std::to_string(pts.size()) + " punctures map outside the claimed disk";
    return out;
}

CertificateOutcome lower_bound_certificate(const SequencePunctures& domain, const DiskPoint& z, double claimed,
                                           const EvaluationLimits& limits) {
    require_claim(claimed);
    CertificateOutcome out;
    const double zm = z.modulus();
    for (index_t k = 1; k <= limits.max_terms; ++k) {
        out.examined = k;
        const double image = pseudo_hyperbolic(z, domain.puncture_at(k));
        if (image < claimed - certificate_slack) {
            out.violating_index = k;
            out.details = "puncture " + std::to_string(k) + " maps to modulus " + format_double(image);
            return out;
        }
        const TailBound t = domain.tail_lower_bound(k);
        if (t.exhausted) {
            out.passed = true;
            out.details = "all punctures examined";
            return out;
        }
        const double tail = radial_tail_bound(t.modulus, zm);
        if (tail >= claimed - certificate_slack) {
            out.passed = true;
            out.details = "tail beyond index " + std::to_string(k) + " maps to modulus >= " + format_double(tail);
            return out;
        }
        if (!domain.family() && k >= domain.prefix().size()) {
            out.details = "tail bound " + format_double(tail) + " does not cover the claimed radius";
            return out;
        }
    }
    out.details = "no certificate within " + std::to_string(limits.max_terms) + " terms";
    return out;
}

InvariantValue polydisk_squeezing_punctured(const PolySequencePunctures& domain, const PolyPoint& z,
                                            const EvaluationLimits& limits) {
    if (z.dimension() != domain.dimension())
        throw Error(ErrorCode::usage, "point has dimension " + std::to_string(z.dimension()) + ", domain has " +
                                          std::to_string(domain.dimension()));
    if (domain.dimension() == 1)
        return squeezing_punctured_disk(domain.as_disk_sequence(), z[0], limits);
    return certified_infimum([&](index_t k) { return polydisk_caratheodory_tanh(z, domain.puncture_at(k)); },
                             [&](index_t n) { return domain.tail_lower_bound(n); },
                             [&](index_t k) { return !domain.coordinates().empty() || k <= domain.prefix().size(); },
                             z.sup_modulus(), limits);
}

InvariantValue polydisk_squeezing_removed_blocks(const RemovedBlocks& domain, const PolyPoint& z,
                                                 const BoundaryOptions& options, const EvaluationLimits& limits) {
    if (z.dimension() != domain.dimension())
        throw Error(ErrorCode::usage, "point has dimension " + std::to_string(z.dimension()) + ", domain has " +
                                          std::to_string(domain.dimension()));
    if (domain.in_removed_set(z))
        throw Error(ErrorCode::not_in_domain, "point not in domain: it lies in a removed closed block");

    InvariantValue out;
    double value = inf;
    double lower = inf;
    const double zm = z.sup_modulus();
    for (index_t k = 1;; ++k) {
        const BoundedMinimum b = block_boundary_minimum(domain.shape(), z, domain.block_at(k), options);
        if (b.value < value) {
            value = b.value;
            out.argmin_index = k;
        }
        lower = std::min(lower, b.lower());
        const TailBound t = domain.tail_lower_bound(k);
        if (t.exhausted || radial_tail_bound(t.modulus, zm) > value + rounding_margin) {
            out.value = value;
            out.mesh_error = std::max(0.0, value - lower);
            out.truncation_index = domain.family() ? k : 0;
            out.tail_bound_used = t.exhausted ? 1.0 : t.modulus;
            return out;
        }
        if (k >= limits.max_terms)
            throw Error(ErrorCode::uncertified, "no certificate within " + std::to_string(limits.max_terms) + " blocks");
    }
}

double center_free_polydisk_value(const RemovedBlocks& domain, const PolyPoint& z) {
    if (domain.family())
        throw Error(ErrorCode::usage, "center-free formula is evaluated on explicit block lists only");
    double best = inf;
    for (const Block& b : domain.blocks()) {
        double worst = 0.0;
        for (const DiskPoint& zj : z.coords()) {
            const double a = zj.modulus();
            worst = std::max(worst, std::abs((b.radius - a) / (1.0 - a * b.radius)));
        }
        best = std::min(best, worst);
    }
    return best;
}

BoundedMinimum center_free_ball_value(const RemovedBlocks& domain, const PolyPoint& z, const BoundaryOptions& options) {
    if (domain.family())
        throw Error(ErrorCode::usage, "center-free formula is evaluated on explicit block lists only");
    const std::size_t n = z.dimension();
    BoundedMinimum best{inf, 0.0};
    for (const Block& b : domain.blocks()) {
        double lipschitz = 0.0;
        for (const DiskPoint& zj : z.coords())
            lipschitz = std::max(lipschitz, pseudo_hyperbolic_lipschitz(zj.modulus(), b.radius));
        lipschitz *= b.radius;
        const std::vector<ParameterRange> box(n - 1, ParameterRange{0.0, std::numbers::pi / 2.0});
        const BoundedMinimum m = lipschitz_minimize(
            box, lipschitz,
            [&](std::span<const double> angles) {
                const std::vector<double> s = spherical_profile(angles);
                double worst = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const double a = z[j].modulus();
                    const double w = b.radius * s[j];
                    worst = std::max(worst, std::abs((w - a) / (1.0 - a * w)));
                }
                return BoundedMinimum{worst, 0.0};
            },
            options.mesh_tolerance, options);
        const double lower = std::min(best.lower(), m.lower());
        best.value = std::min(best.value, m.value);
        best.error = best.value - lower;
    }
    return best;
}

double annulus_squeezing(const Annulus& domain, const DiskPoint& z) {
    const double r = domain.inner_radius;
    const double m = z.modulus();
    if (!(m > r))
        throw Error(ErrorCode::not_in_domain, "point not in annulus: |z| = " + format_double(m) +
                                                  " <= inner radius " + format_double(r));
    return std::max(m, r / m);
}

double product_of_balls_squeezing(const ProductOfBalls& domain, const BallProductPoint& z) {
    if (z.size() != domain.n)
        throw Error(ErrorCode::not_in_domain, "point has " + std::to_string(z.size()) + " factors, expected " +
                                                  std::to_string(domain.n));
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i].size() != domain.n)
            throw Error(ErrorCode::not_in_domain, "factor " + std::to_string(i + 1) + " has wrong dimension");
        double norm2 = 0.0;
        for (const complex& c : z[i])
            norm2 += std::norm(c);
        if (!(std::sqrt(norm2) < 1.0 - boundary_margin))
            throw Error(ErrorCode::not_in_domain, "factor " + std::to_string(i + 1) + " is not inside the unit ball");
    }
    return 1.0 / std::sqrt(static_cast<double>(domain.n));
}

double product_of_balls_T_lower_bound(const ProductOfBalls& domain) {
    return 1.0 / std::sqrt(static_cast<double>(domain.n));
}

CheckOutcome product_ratio_contradiction_check(std::size_t n) {
    if (n <= 1)
        throw Error(ErrorCode::usage, "the ratio contradiction needs n > 1");
    const ProductOfBalls domain{n};
    const BallProductPoint origin(n, std::vector<complex>(n));
    const double s = product_of_balls_squeezing(domain, origin);
    const double t_lower = product_of_balls_T_lower_bound(domain);
    const double nd = static_cast<double>(n);
    const double t_if_s_is_t_over_n = nd * s;  // sqrt(n)
    const double t_if_t_is_s_over_n = s / nd;  // n^{-3/2}

    CheckOutcome out;
    const bool first_rejected = t_if_s_is_t_over_n > 1.0;
    const bool second_rejected = t_if_t_is_s_over_n < t_lower;
    out.passed = first_rejected && second_rejected;
    out.values = {{"S", s},
                  {"T_lower_bound", t_lower},
                  {"T_if_S_eq_T_over_n", t_if_s_is_t_over_n},
                  {"T_if_T_eq_S_over_n", t_if_t_is_s_over_n}};
    out.details = std::string(first_rejected ? "S = T/n forces T > 1; " : "S = T/n NOT excluded; ") +
                  (second_rejected ? "T = S/n falls below the lower bound" : "T = S/n NOT excluded");
    return out;
}

CheckOutcome annulus_compact_removal_check(std::size_t samples) {
    constexpr double r = 0.25;
    const complex z{0.5, 0.0};
    const auto side = std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(static_cast<double>(samples))));
    double sampled = inf;
    for (std::size_t i = 0; i < side; ++i) {
        const double rho = r * static_cast<double>(i) / static_cast<double>(side - 1);
        for (std::size_t j = 0; j < side; ++j) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(side);
            sampled = std::min(sampled, pseudo_hyperbolic(z, std::polar(rho, angle)));
        }
    }
    const double at_quarter = pseudo_hyperbolic(z, complex{r, 0.0});
    const double annulus = annulus_squeezing(Annulus{r}, DiskPoint::at(z));
    const double gap = annulus - sampled;

    CheckOutcome out;
    out.passed = sampled <= 2.0 / 7.0 + 1e-9 && annulus == 0.5 && gap >= 3.0 / 14.0 - 1e-9;
    out.values = {{"sampled_min", sampled}, {"min_at_w_quarter", at_quarter}, {"annulus_value", annulus}, {"gap", gap}};
    out.details = "closed-disk minimum " + format_double(sampled) + " vs annulus value " + format_double(annulus);
    return out;
}

} // namespace squeeze
