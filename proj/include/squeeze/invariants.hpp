#pragma once

// Closed-form squeezing functions, polydisk squeezing functions and Caratheodory-Fridman
// invariants for the supported domain families.
//
// For the unit disk minus a puncture set A (finite, or a sequence tending to the
// boundary), S(z) = h^c(z) = inf_{a in A} |(a - z) / (1 - conj(z) a)|. The polydisk
// analogue replaces the pseudo-hyperbolic distance by its coordinate-wise maximum.
// Infinite infima are evaluated exactly by certified truncation: once the tail bound
// (m(N) - |z|) / (1 - |z| m(N)) exceeds the running minimum, no later puncture can win.

#include "squeeze/boundary.hpp"
#include "squeeze/domain.hpp"
#include "squeeze/hyperbolic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace squeeze {

/// Smallest distance to a puncture that is still considered a domain point.
inline constexpr double coincidence_threshold = 1e-14;

struct InvariantValue {
    double value = 0.0;
    /// Last puncture (or block) index examined; 0 for finite exact cases.
    index_t truncation_index = 0;
    /// Smallest index attaining the minimum; 0 when not applicable.
    index_t argmin_index = 0;
    /// Tail modulus m(N) at the stopping index; 1 when nothing lies beyond the examined set.
    double tail_bound_used = 1.0;
    /// Nonzero only for boundary-minimization results: the true value lies in
    /// [value - mesh_error, value].
    double mesh_error = 0.0;
};

struct EvaluationLimits {
    index_t max_terms = 10'000'000;
};

InvariantValue squeezing_punctured_disk(const FinitePunctures& domain, const DiskPoint& z);
InvariantValue squeezing_punctured_disk(const SequencePunctures& domain, const DiskPoint& z,
                                        const EvaluationLimits& limits = {});

/// Caratheodory-Fridman invariant (tanh-radius convention). Equal to the squeezing function
/// on every punctured disk; evaluated by the same kernel.
InvariantValue fridman_caratheodory_punctured_disk(const FinitePunctures& domain, const DiskPoint& z);
InvariantValue fridman_caratheodory_punctured_disk(const SequencePunctures& domain, const DiskPoint& z,
                                                   const EvaluationLimits& limits = {});

struct CertificateOutcome {
    bool passed = false;
    index_t examined = 0;
    std::optional<index_t> violating_index;
    std::string details;
};

/// Checks that the Mobius map f(w) = (w - z)/(1 - conj(z) w) omits no point of modulus
/// below `claimed`: every examined puncture satisfies |f(a)| >= claimed - 1e-12 and the tail
/// certificate covers the rest. `claimed` must lie in (0, 1).
CertificateOutcome lower_bound_certificate(const FinitePunctures& domain, const DiskPoint& z, double claimed);
CertificateOutcome lower_bound_certificate(const SequencePunctures& domain, const DiskPoint& z, double claimed,
                                           const EvaluationLimits& limits = {});

/// T(z) = inf_k max_j pseudo_hyperbolic(z_j, a_j^k). One-dimensional input is delegated to
/// the disk evaluation.
InvariantValue polydisk_squeezing_punctured(const PolySequencePunctures& domain, const PolyPoint& z,
                                            const EvaluationLimits& limits = {});

/// T(z) = inf_k min_{w on the boundary of block k} max_j pseudo_hyperbolic(z_j, w_j).
InvariantValue polydisk_squeezing_removed_blocks(const RemovedBlocks& domain, const PolyPoint& z,
                                                 const BoundaryOptions& options = {},
                                                 const EvaluationLimits& limits = {});

/// Closed form inf_k max_j |(r_k - |z_j|)/(1 - |z_j| r_k)| for removed polydisks. It ignores
/// block centers and matches the boundary minimum only for origin-centered blocks with
/// |z_j| >= r_k in every coordinate.
double center_free_polydisk_value(const RemovedBlocks& domain, const PolyPoint& z);

/// inf_k min_{w on the sphere} max_j |(|w_j| - |z_j|)/(1 - |z_j||w_j|)| for removed balls,
/// evaluated by certified minimization over the radial profile. Matches the boundary
/// minimum for origin-centered balls.
BoundedMinimum center_free_ball_value(const RemovedBlocks& domain, const PolyPoint& z,
                                      const BoundaryOptions& options = {});

/// max(|z|, r/|z|) on {r < |z| < 1}.
double annulus_squeezing(const Annulus& domain, const DiskPoint& z);

/// A point of the product of n unit balls of C^n: n factors with n coordinates each.
using BallProductPoint = std::vector<std::vector<complex>>;

/// 1/sqrt(n): each factor is a ball (squeezing function identically 1) and the product
/// formula for classical symmetric domains gives (sum_i 1)^{-1/2}.
double product_of_balls_squeezing(const ProductOfBalls& domain, const BallProductPoint& z);

/// 1/sqrt(n), a lower bound on the polydisk squeezing function of the product (not its value).
double product_of_balls_T_lower_bound(const ProductOfBalls& domain);

struct CheckOutcome {
    bool passed = false;
    std::vector<std::pair<std::string, double>> values;
    std::string details;
};

/// For the product of n > 1 balls, neither S = T/n nor T = S/n can hold: the first forces
/// T = sqrt(n) > 1, the second T = n^{-3/2} below the lower bound 1/sqrt(n).
CheckOutcome product_ratio_contradiction_check(std::size_t n);

/// Removing the closed disk of radius 1/4 from the unit disk: the minimum of
/// pseudo_hyperbolic(1/2, w) over that disk is 2/7, below the annulus value 1/2 at z = 1/2.
/// `samples` controls the dense polar sampling of the closed disk.
CheckOutcome annulus_compact_removal_check(std::size_t samples = 1'000'000);

} // namespace squeeze
