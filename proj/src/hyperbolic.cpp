#include "squeeze/hyperbolic.hpp"

#include "squeeze/error.hpp"
#include "squeeze/format.hpp"

#include <algorithm>
#include <cmath>

namespace squeeze {

DiskPoint DiskPoint::at(complex p) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
        throw Error(ErrorCode::not_in_domain, "point has a non-finite coordinate");
    const double r = std::abs(p);
    if (r >= 1.0 - boundary_margin)
        throw Error(ErrorCode::not_in_domain,
                    "point " + format_double(p.real()) + "," + format_double(p.imag()) +
                        " is not strictly inside the unit disk (modulus " + format_double(r) + ")");
    return DiskPoint{p};
}

PolyPoint::PolyPoint(std::vector<DiskPoint> coords) : coords_(std::move(coords)) {
    if (coords_.empty())
        throw Error(ErrorCode::usage, "polydisk point needs at least one coordinate");
}

PolyPoint PolyPoint::at(std::span<const complex> coords) {
    std::vector<DiskPoint> pts;
    pts.reserve(coords.size());
    for (const complex& c : coords)
        pts.push_back(DiskPoint::at(c));
    return PolyPoint(std::move(pts));
}

double PolyPoint::sup_modulus() const noexcept {
    double m = 0.0;
    for (const DiskPoint& p : coords_)
        m = std::max(m, p.modulus());
    return m;
}

DiskPoint MobiusMap::operator()(const DiskPoint& p) const {
    const complex a = center.value();
    const complex z = p.value();
    const complex image = std::polar(1.0, rotation) * (z - a) / (1.0 - std::conj(a) * z);
    // The image of an interior point is interior; only rounding can push it outward.
    return DiskPoint::trusted(image);
}

DiskPoint mobius_apply(const MobiusMap& m, const DiskPoint& p) {
    return m(DiskPoint::at(p.value()));
}

double pseudo_hyperbolic(complex z, complex w) noexcept {
    const double zr = z.real(), zi = z.imag();
    const double wr = w.real(), wi = w.imag();
    const double num = std::hypot(wr - zr, wi - zi);
    // 1 - conj(z) w, written so that swapping z and w only flips the sign of the
    // imaginary part.
    const double den_re = 1.0 - (zr * wr + zi * wi);
    const double den_im = zr * wi - zi * wr;
    return num / std::hypot(den_re, den_im);
}

double sigma(double x) {
    if (!(x >= 0.0) || x >= 1.0)
        throw Error(ErrorCode::usage, "sigma is defined on [0, 1), got " + format_double(x));
    return std::atanh(x);
}

double sigma_inverse(double r) {
    if (!(r >= 0.0))
        throw Error(ErrorCode::usage, "sigma_inverse is defined on [0, inf), got " + format_double(r));
    return std::tanh(r);
}

double poincare_distance(const DiskPoint& z, const DiskPoint& w) {
    return sigma(pseudo_hyperbolic(z, w));
}

double polydisk_caratheodory_tanh(const PolyPoint& z, const PolyPoint& w) {
    if (z.dimension() != w.dimension())
        throw Error(ErrorCode::usage, "dimension mismatch: " + std::to_string(z.dimension()) + " vs " +
                                          std::to_string(w.dimension()));
    double m = 0.0;
    for (std::size_t i = 0; i < z.dimension(); ++i)
        m = std::max(m, pseudo_hyperbolic(z[i], w[i]));
    return m;
}

double radial_tail_bound(double tail_modulus, double point_modulus) noexcept {
    if (tail_modulus <= point_modulus)
        return 0.0;
    return (tail_modulus - point_modulus) / (1.0 - point_modulus * tail_modulus);
}

} // namespace squeeze
