#include "squeeze/boundary.hpp"

#include "squeeze/error.hpp"
#include "squeeze/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace squeeze {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

BoundedMinimum bracket_max(const BoundedMinimum& a, const BoundedMinimum& b) {
    const double value = std::max(a.value, b.value);
    const double lower = std::max(a.lower(), b.lower());
    return {value, value - lower};
}

BoundedMinimum bracket_min(const BoundedMinimum& a, const BoundedMinimum& b) {
    const double value = std::min(a.value, b.value);
    const double lower = std::min(a.lower(), b.lower());
    return {value, value - lower};
}

} // namespace

BoundedMinimum lipschitz_minimize(std::span<const ParameterRange> box, double lipschitz,
                                  const std::function<BoundedMinimum(std::span<const double>)>& f, double tolerance,
                                  const BoundaryOptions& options) {
    const std::size_t dim = box.size();
    if (dim == 0)
        throw Error(ErrorCode::usage, "lipschitz_minimize needs at least one parameter");
    if (!(tolerance > 0.0))
        throw Error(ErrorCode::usage, "mesh tolerance must be positive");

    // Keep the initial grid to at most ~2^16 cells whatever the dimension.
    std::size_t per_axis = std::max<std::size_t>(1, options.initial_cells);
    while (per_axis > 1 && std::pow(static_cast<double>(per_axis), static_cast<double>(dim)) > 65536.0)
        per_axis /= 2;

    // Cells are stored flat: dim centers and dim half-widths per cell.
    std::vector<double> centers, halves;
    std::vector<BoundedMinimum> values;
    std::size_t evaluations = 0;
    double best = inf;

    auto evaluate = [&](std::span<const double> x) {
        if (++evaluations > options.max_evaluations)
            throw Error(ErrorCode::uncertified, "boundary minimization exceeded " +
                                                    std::to_string(options.max_evaluations) +
                                                    " evaluations before reaching mesh tolerance " +
                                                    format_double(tolerance));
        BoundedMinimum v = f(x);
        best = std::min(best, v.value);
        return v;
    };

    {
        std::vector<std::size_t> idx(dim, 0);
        std::vector<double> x(dim);
        for (;;) {
            for (std::size_t k = 0; k < dim; ++k) {
                const double width = (box[k].hi - box[k].lo) / static_cast<double>(per_axis);
                x[k] = box[k].lo + (static_cast<double>(idx[k]) + 0.5) * width;
                centers.push_back(x[k]);
                halves.push_back(width / 2.0);
            }
            values.push_back(evaluate(x));
            std::size_t k = 0;
            while (k < dim && ++idx[k] == per_axis)
                idx[k++] = 0;
            if (k == dim)
                break;
        }
    }

    double dropped_floor = inf;
    const std::size_t children = std::size_t{1} << dim;
    std::vector<double> next_centers, next_halves, child(dim);
    std::vector<BoundedMinimum> next_values;

    for (;;) {
        const std::size_t count = values.size();
        double global_lower = dropped_floor;
        for (std::size_t i = 0; i < count; ++i) {
            double reach = 0.0;
            for (std::size_t k = 0; k < dim; ++k)
                reach += halves[i * dim + k];
            global_lower = std::min(global_lower, values[i].lower() - lipschitz * reach);
        }
        if (best - global_lower <= tolerance)
            return {best, std::max(0.0, best - global_lower)};

        next_centers.clear();
        next_halves.clear();
        next_values.clear();
        for (std::size_t i = 0; i < count; ++i) {
            double reach = 0.0;
            for (std::size_t k = 0; k < dim; ++k)
                reach += halves[i * dim + k];
            const double lower = values[i].lower() - lipschitz * reach;
            if (lower >= best - tolerance) {
                dropped_floor = std::min(dropped_floor, lower);
                continue;
            }
            for (std::size_t c = 0; c < children; ++c) {
                for (std::size_t k = 0; k < dim; ++k) {
                    const double h = halves[i * dim + k] / 2.0;
                    child[k] = centers[i * dim + k] + (((c >> k) & 1U) ? h : -h);
                    next_centers.push_back(child[k]);
                    next_halves.push_back(h);
                }
                next_values.push_back(evaluate(child));
            }
        }
        centers.swap(next_centers);
        halves.swap(next_halves);
        values.swap(next_values);
    }
}

double pseudo_hyperbolic_lipschitz(double z_modulus, double reach) noexcept {
    const double r = std::min(reach, 1.0);
    const double gap = 1.0 - z_modulus * r;
    return (1.0 - z_modulus * z_modulus) / (gap * gap);
}

BoundedMinimum circle_minimum(complex z, complex center, double radius, double tolerance,
                              const BoundaryOptions& options) {
    if (radius <= 0.0)
        return {pseudo_hyperbolic(z, center), 0.0};
    const double lipschitz = pseudo_hyperbolic_lipschitz(std::abs(z), std::abs(center) + radius) * radius;
    const ParameterRange range{0.0, 2.0 * std::numbers::pi};
    return lipschitz_minimize(
        std::span(&range, 1), lipschitz,
        [&](std::span<const double> t) {
            return BoundedMinimum{pseudo_hyperbolic(z, center + std::polar(radius, t[0])), 0.0};
        },
        tolerance, options);
}

double circle_image_minimum(complex z, complex center, double radius) noexcept {
    if (radius <= 0.0)
        return pseudo_hyperbolic(z, center);
    // u lies on the image iff |A u + B| = radius |1 + conj(z) u|.
    const complex a = 1.0 - center * std::conj(z);
    const complex b = z - center;
    const double zz = std::norm(z);
    const double d = std::norm(a) - radius * radius * zz;
    const complex k = a * std::conj(b) - radius * radius * std::conj(z);
    const double image_center = std::abs(k) / d;
    const double image_radius = radius * (1.0 - zz) / d;
    return std::abs(image_center - image_radius);
}

BoundedMinimum closed_disk_minimum(complex z, complex center, double radius, double tolerance,
                                   const BoundaryOptions& options) {
    if (std::abs(z - center) <= radius)
        return {0.0, 0.0};
    return circle_minimum(z, center, radius, tolerance, options);
}

BoundedMinimum polydisk_boundary_minimum(const PolyPoint& z, const Block& block, const BoundaryOptions& options) {
    const std::size_t n = z.dimension();
    if (block.center.dimension() != n)
        throw Error(ErrorCode::usage, "block and point dimensions differ");
    const double tol = options.mesh_tolerance;

    std::vector<BoundedMinimum> on_circle(n), on_disk(n);
    for (std::size_t j = 0; j < n; ++j) {
        on_circle[j] = circle_minimum(z[j].value(), block.center[j].value(), block.radius, tol, options);
        on_disk[j] = std::abs(z[j].value() - block.center[j].value()) <= block.radius ? BoundedMinimum{0.0, 0.0}
                                                                                      : on_circle[j];
    }

    BoundedMinimum result{inf, 0.0};
    for (std::size_t face = 0; face < n; ++face) {
        BoundedMinimum v = on_circle[face];
        for (std::size_t i = 0; i < n; ++i)
            if (i != face)
                v = bracket_max(v, on_disk[i]);
        result = face == 0 ? v : bracket_min(result, v);
    }
    return result;
}

std::vector<double> spherical_profile(std::span<const double> angles) {
    std::vector<double> s(angles.size() + 1);
    double carry = 1.0;
    for (std::size_t k = 0; k < angles.size(); ++k) {
        s[k] = carry * std::cos(angles[k]);
        carry *= std::sin(angles[k]);
    }
    s.back() = carry;
    return s;
}

BoundedMinimum ball_boundary_minimum(const PolyPoint& z, const Block& block, const BoundaryOptions& options) {
    const std::size_t n = z.dimension();
    if (block.center.dimension() != n)
        throw Error(ErrorCode::usage, "block and point dimensions differ");
    if (n < 2)
        return circle_minimum(z[0].value(), block.center[0].value(), block.radius, options.mesh_tolerance, options);

    double lipschitz = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        lipschitz = std::max(lipschitz, pseudo_hyperbolic_lipschitz(z[j].modulus(),
                                                                    block.center[j].modulus() + block.radius));
    // |d s_j / d angle_k| <= 1 for every spherical coordinate.
    lipschitz *= block.radius;

    const std::vector<ParameterRange> box(n - 1, ParameterRange{0.0, std::numbers::pi / 2.0});
    return lipschitz_minimize(
        box, lipschitz,
        [&](std::span<const double> angles) {
            const std::vector<double> s = spherical_profile(angles);
            double v = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                v = std::max(v, circle_image_minimum(z[j].value(), block.center[j].value(), block.radius * s[j]));
            return BoundedMinimum{v, 0.0};
        },
        options.mesh_tolerance, options);
}

BoundedMinimum block_boundary_minimum(BlockShape shape, const PolyPoint& z, const Block& block,
                                      const BoundaryOptions& options) {
    return shape == BlockShape::polydisk ? polydisk_boundary_minimum(z, block, options)
                                         : ball_boundary_minimum(z, block, options);
}

} // namespace squeeze
