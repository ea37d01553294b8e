#pragma once

// Certified minimization of the polydisk Caratheodory tanh-distance over the boundary of a
// removed closed polydisk or ball.
//
// Every result is a bracket: the true minimum lies in [value - error, value], and `value`
// is attained at an actual boundary point. Brackets come from Lipschitz bounds on
// pseudo_hyperbolic(z, .): |d/dw rho(z, w)| <= (1 - |z|^2) / (1 - |z| R)^2 for |w| <= R.

#include "squeeze/domain.hpp"
#include "squeeze/hyperbolic.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace squeeze {

struct BoundaryOptions {
    double mesh_tolerance = 1e-6;
    std::size_t initial_cells = 32;        // per parameter axis
    std::size_t max_evaluations = 20'000'000;
};

struct BoundedMinimum {
    double value = 0.0;
    double error = 0.0;

    double lower() const noexcept { return value - error; }
};

/// Parameter box for `lipschitz_minimize`.
struct ParameterRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Minimizes f over the box, where |f(x) - f(y)| <= lipschitz * sum_k |x_k - y_k|, and f
/// itself may only be known to a bracket. Stops once value - lower <= tolerance.
/// Deterministic: cells are refined in a fixed order. Throws Error{uncertified} when the
/// evaluation budget runs out first.
BoundedMinimum lipschitz_minimize(std::span<const ParameterRange> box, double lipschitz,
                                  const std::function<BoundedMinimum(std::span<const double>)>& f, double tolerance,
                                  const BoundaryOptions& options);

/// Upper bound on |d/dw pseudo_hyperbolic(z, w)| over |w| <= reach (reach < 1).
double pseudo_hyperbolic_lipschitz(double z_modulus, double reach) noexcept;

/// min over |w - center| = radius of pseudo_hyperbolic(z, w).
BoundedMinimum circle_minimum(complex z, complex center, double radius, double tolerance,
                              const BoundaryOptions& options);

/// Same minimum in closed form. The automorphism w -> (w - z)/(1 - conj(z) w) sends the
/// circle to a circle with center C and radius R, so the minimum is ||C| - R|.
double circle_image_minimum(complex z, complex center, double radius) noexcept;

/// min over |w - center| <= radius; zero when z lies in the closed disk, otherwise the
/// circle minimum (minimum modulus principle for the Mobius map sending z to 0).
BoundedMinimum closed_disk_minimum(complex z, complex center, double radius, double tolerance,
                                   const BoundaryOptions& options);

/// min over w with max_j |w_j - c_j| = r of max_j pseudo_hyperbolic(z_j, w_j). The sphere
/// is split into faces {|w_j - c_j| = r}; on each face the objective separates by coordinate.
BoundedMinimum polydisk_boundary_minimum(const PolyPoint& z, const Block& block, const BoundaryOptions& options);

/// Same objective over the Euclidean sphere sum_j |w_j - c_j|^2 = r^2, parameterized by the
/// radial profile s on the nonnegative unit sphere (spherical angles in [0, pi/2]^{n-1})
/// with the phases minimized per coordinate.
BoundedMinimum ball_boundary_minimum(const PolyPoint& z, const Block& block, const BoundaryOptions& options);

BoundedMinimum block_boundary_minimum(BlockShape shape, const PolyPoint& z, const Block& block,
                                      const BoundaryOptions& options);

/// Nonnegative unit vector with the given n-1 spherical angles in [0, pi/2].
std::vector<double> spherical_profile(std::span<const double> angles);

} // namespace squeeze
