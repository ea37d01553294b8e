#pragma once

// Elementary hyperbolic geometry of the unit disk and the unit polydisk.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace squeeze {

using complex = std::complex<double>;

/// Points whose modulus reaches this margin are treated as lying on the boundary.
inline constexpr double boundary_margin = 1e-12;

/// A point strictly inside the unit disk.
///
/// `DiskPoint::at` validates the modulus against `boundary_margin`. Points produced by
/// closed-form puncture generators are built with `DiskPoint::trusted`: they are inside
/// the disk mathematically, but for large indices their modulus may round to 1.
class DiskPoint {
public:
    constexpr DiskPoint() = default;

    /// Throws Error{not_in_domain} when |p| >= 1 - boundary_margin or p is not finite.
    static DiskPoint at(complex p);
    static DiskPoint at(double re, double im) { return at(complex{re, im}); }

    static constexpr DiskPoint trusted(complex p) noexcept { return DiskPoint{p}; }

    constexpr complex value() const noexcept { return value_; }
    constexpr double re() const noexcept { return value_.real(); }
    constexpr double im() const noexcept { return value_.imag(); }
    double modulus() const noexcept { return std::abs(value_); }

    friend constexpr bool operator==(const DiskPoint&, const DiskPoint&) = default;

private:
    constexpr explicit DiskPoint(complex p) noexcept : value_(p) {}

    complex value_{};
};

/// A point of the polydisk; every coordinate is a DiskPoint.
class PolyPoint {
public:
    PolyPoint() = default;
    explicit PolyPoint(std::vector<DiskPoint> coords);

    /// Validates every coordinate. Throws on an empty list.
    static PolyPoint at(std::span<const complex> coords);

    std::size_t dimension() const noexcept { return coords_.size(); }
    const DiskPoint& operator[](std::size_t i) const { return coords_[i]; }
    std::span<const DiskPoint> coords() const noexcept { return coords_; }

    /// max_j |z_j|
    double sup_modulus() const noexcept;

    friend bool operator==(const PolyPoint&, const PolyPoint&) = default;

private:
    std::vector<DiskPoint> coords_;
};

/// p -> e^{i rotation} (p - center) / (1 - conj(center) p)
struct MobiusMap {
    DiskPoint center;
    double rotation = 0.0;

    DiskPoint operator()(const DiskPoint& p) const;
};

DiskPoint mobius_apply(const MobiusMap& m, const DiskPoint& p);

/// |w - z| / |1 - conj(z) w|. Bitwise symmetric in its arguments.
double pseudo_hyperbolic(complex z, complex w) noexcept;
inline double pseudo_hyperbolic(const DiskPoint& z, const DiskPoint& w) noexcept {
    return pseudo_hyperbolic(z.value(), w.value());
}

/// sigma(x) = (1/2) log((1 + x) / (1 - x)) = artanh(x), defined on [0, 1).
double sigma(double x);
/// tanh, the inverse of sigma; defined on [0, inf).
double sigma_inverse(double r);

double poincare_distance(const DiskPoint& z, const DiskPoint& w);

/// tanh of the Caratheodory distance of the polydisk: the coordinate-wise maximum of
/// pseudo-hyperbolic distances. Throws Error{usage} on a dimension mismatch.
double polydisk_caratheodory_tanh(const PolyPoint& z, const PolyPoint& w);

/// Lower bound on pseudo_hyperbolic(z, w) over all w with |w| >= tail_modulus, given
/// |z| = point_modulus: (m - |z|) / (1 - |z| m), or 0 when m <= |z|.
double radial_tail_bound(double tail_modulus, double point_modulus) noexcept;

} // namespace squeeze
