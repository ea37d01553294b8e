#include "squeeze/domain.hpp"

#include "squeeze/error.hpp"
#include "squeeze/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace squeeze {

namespace {

// Punctures closer than this are treated as an accumulation inside the disk.
constexpr double min_separation = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void schema_error(const std::string& msg) { throw Error(ErrorCode::schema, msg); }
[[noreturn]] void invariant_error(const std::string& msg) { throw Error(ErrorCode::invariant, msg); }

DiskPoint validated_point(complex p, const std::string& what) {
    try {
        return DiskPoint::at(p);
    } catch (const Error& e) {
        invariant_error(what + ": " + e.what());
    }
}

// ---- families -------------------------------------------------------------------------

void validate_family(const RadialFamily& f) {
    if (!(f.q > 0.0 && f.q < 1.0))
        invariant_error("radial family needs 0 < q < 1 (tail bound 1 - q^(N+1) must converge to 1), got q = " +
                        format_double(f.q));
    if (!std::isfinite(f.theta))
        invariant_error("radial family theta must be finite");
}

void validate_family(const BoundaryOrbitFamily& f) {
    if (!(f.c > 0.0 && f.c < 1.0))
        invariant_error("boundary_orbit family needs 0 < c < 1, got c = " + format_double(f.c));
    if (!(f.p > 0.0) || !std::isfinite(f.p))
        invariant_error("boundary_orbit family needs p > 0 (tail bound must converge to 1), got p = " +
                        format_double(f.p));
    if (!std::isfinite(f.theta))
        invariant_error("boundary_orbit family theta must be finite");
}

void validate_family(const PunctureFamily& f) {
    std::visit([](const auto& g) { validate_family(g); }, f);
}

double tail_modulus_of(const CoordinateSource& src, index_t n) {
    return std::visit(overloaded{[&](const RadialFamily& f) { return family_tail_modulus(PunctureFamily{f}, n); },
                                 [&](const BoundaryOrbitFamily& f) {
                                     return family_tail_modulus(PunctureFamily{f}, n);
                                 },
                                 [](const FixedCoordinate& c) { return c.value.modulus(); }},
                      src);
}

std::string check_tail_grid(auto&& tail) {
    double previous = -1.0;
    for (index_t n = 0; n <= 1'000'000; n = (n < 16 ? n + 1 : n * 2)) {
        const double m = tail(n);
        if (m < previous)
            return "tail bound decreases at N = " + std::to_string(n);
        previous = m;
    }
    const double last = tail(1'000'000);
    if (!(last > 1.0 - 1e-6))
        return "tail bound not converging to 1: m(10^6) = " + format_double(last);
    return {};
}

void validate_tail_constant(const std::optional<double>& m) {
    if (m && !(*m > 0.0 && *m < 1.0))
        invariant_error("tail_modulus_constant must lie in (0, 1), got " + format_double(*m));
}

double sup_distance(const PolyPoint& a, const PolyPoint& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.dimension(); ++j)
        m = std::max(m, std::abs(a[j].value() - b[j].value()));
    return m;
}

double euclidean_distance(const PolyPoint& a, const PolyPoint& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.dimension(); ++j)
        s += std::norm(a[j].value() - b[j].value());
    return std::sqrt(s);
}

// ---- json helpers ---------------------------------------------------------------------

using nlohmann::json;

void require_keys(const json& doc, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : doc.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            schema_error("unexpected key \"" + key + "\" for kind \"" + doc.at("kind").get<std::string>() + "\"");
    }
}

const json& member(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end())
        schema_error(std::string("missing key \"") + key + "\"");
    return *it;
}

double number(const json& v, const std::string& what) {
    if (!v.is_number())
        schema_error(what + " must be a number");
    return v.get<double>();
}

double number_member(const json& doc, const char* key) { return number(member(doc, key), key); }

double optional_number(const json& doc, const char* key, double fallback) {
    auto it = doc.find(key);
    return it == doc.end() ? fallback : number(*it, key);
}

std::optional<double> optional_number(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end())
        return std::nullopt;
    return number(*it, key);
}

std::size_t count_member(const json& doc, const char* key) {
    const json& v = member(doc, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        schema_error(std::string(key) + " must be a nonnegative integer");
    return v.get<std::size_t>();
}

complex complex_value(const json& v, const std::string& what) {
    if (!v.is_array() || v.size() != 2)
        schema_error(what + " must be a [re, im] pair");
    return {number(v[0], what + " re"), number(v[1], what + " im")};
}

const json& array_member(const json& doc, const char* key) {
    const json& v = member(doc, key);
    if (!v.is_array())
        schema_error(std::string(key) + " must be a list");
    return v;
}

std::vector<complex> complex_list(const json& v, const std::string& what) {
    if (!v.is_array())
        schema_error(what + " must be a list of [re, im] pairs");
    std::vector<complex> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(complex_value(v[i], what + "[" + std::to_string(i) + "]"));
    return out;
}

PolyPoint validated_poly_point(const std::vector<complex>& coords, std::size_t n, const std::string& what) {
    if (coords.size() != n)
        invariant_error(what + " has " + std::to_string(coords.size()) + " coordinates, expected " +
                        std::to_string(n));
    std::vector<DiskPoint> pts;
    for (std::size_t j = 0; j < coords.size(); ++j)
        pts.push_back(validated_point(coords[j], what + " coordinate " + std::to_string(j + 1)));
    return PolyPoint(std::move(pts));
}

json point_json(complex p) { return json::array({p.real(), p.imag()}); }

json poly_point_json(const PolyPoint& p) {
    json out = json::array();
    for (const DiskPoint& c : p.coords())
        out.push_back(point_json(c.value()));
    return out;
}

PunctureFamily parse_family(const json& doc) {
    const json& name = member(doc, "family");
    if (!name.is_string())
        schema_error("family must be a string");
    const std::string s = name.get<std::string>();
    if (s == "radial")
        return RadialFamily{number_member(doc, "q"), optional_number(doc, "theta", 0.0)};
    if (s == "boundary_orbit")
        return BoundaryOrbitFamily{number_member(doc, "c"), number_member(doc, "p"),
                                   optional_number(doc, "theta", 0.0)};
    schema_error("unknown family \"" + s + "\" (expected radial or boundary_orbit)");
}

void write_family(json& doc, const PunctureFamily& f) {
    std::visit(overloaded{[&](const RadialFamily& g) {
                              doc["family"] = "radial";
                              doc["q"] = g.q;
                              doc["theta"] = g.theta;
                          },
                          [&](const BoundaryOrbitFamily& g) {
                              doc["family"] = "boundary_orbit";
                              doc["c"] = g.c;
                              doc["p"] = g.p;
                              doc["theta"] = g.theta;
                          }},
               f);
}

DomainSpec parse_finite(const json& doc) {
    require_keys(doc, {"kind", "points"});
    const auto raw = complex_list(array_member(doc, "points"), "points");
    std::vector<DiskPoint> pts;
    for (std::size_t i = 0; i < raw.size(); ++i)
        pts.push_back(validated_point(raw[i], "puncture " + std::to_string(i + 1)));
    return FinitePunctures(std::move(pts));
}

DomainSpec parse_sequence(const json& doc) {
    if (doc.contains("family")) {
        require_keys(doc, {"kind", "family", "q", "theta", "c", "p"});
        return SequencePunctures::from_family(parse_family(doc));
    }
    require_keys(doc, {"kind", "points", "tail_modulus_constant"});
    const auto raw = complex_list(array_member(doc, "points"), "points");
    std::vector<DiskPoint> pts;
    for (std::size_t i = 0; i < raw.size(); ++i)
        pts.push_back(validated_point(raw[i], "puncture " + std::to_string(i + 1)));
    return SequencePunctures::from_prefix(std::move(pts), optional_number(doc, "tail_modulus_constant"));
}

DomainSpec parse_poly_sequence(const json& doc) {
    const std::size_t n = count_member(doc, "n");
    if (n < 1)
        invariant_error("poly_sequence needs n >= 1");
    if (doc.contains("coordinates")) {
        require_keys(doc, {"kind", "n", "coordinates"});
        const json& coords = array_member(doc, "coordinates");
        if (coords.size() != n)
            invariant_error("poly_sequence has " + std::to_string(coords.size()) + " coordinate generators, expected " +
                            std::to_string(n));
        std::vector<CoordinateSource> sources;
        for (std::size_t j = 0; j < coords.size(); ++j) {
            const json& c = coords[j];
            if (!c.is_object())
                schema_error("coordinate generator must be an object");
            if (c.contains("point")) {
                for (const auto& [key, _] : c.items())
                    if (key != "point")
                        schema_error("unexpected key \"" + key + "\" in fixed coordinate");
                sources.emplace_back(FixedCoordinate{validated_point(
                    complex_value(c["point"], "point"), "fixed coordinate " + std::to_string(j + 1))});
            } else {
                for (const auto& [key, _] : c.items())
                    if (key != "family" && key != "q" && key != "theta" && key != "c" && key != "p")
                        schema_error("unexpected key \"" + key + "\" in coordinate family");
                std::visit([&](const auto& f) { sources.emplace_back(f); }, parse_family(c));
            }
        }
        return PolySequencePunctures::from_coordinates(std::move(sources));
    }
    require_keys(doc, {"kind", "n", "points", "tail_modulus_constant"});
    const json& pts = array_member(doc, "points");
    std::vector<PolyPoint> prefix;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string what = "puncture " + std::to_string(i + 1);
        prefix.push_back(validated_poly_point(complex_list(pts[i], what), n, what));
    }
    return PolySequencePunctures::from_prefix(n, std::move(prefix), optional_number(doc, "tail_modulus_constant"));
}

DomainSpec parse_blocks(const json& doc, BlockShape shape) {
    const std::size_t n = count_member(doc, "n");
    if (doc.contains("family")) {
        require_keys(doc, {"kind", "n", "family", "q", "theta", "rho"});
        const json& name = member(doc, "family");
        if (!name.is_string() || name.get<std::string>() != "radial_blocks")
            schema_error("unknown block family (expected radial_blocks)");
        return RemovedBlocks::from_family(
            shape, n,
            RadialBlockFamily{number_member(doc, "q"), optional_number(doc, "theta", 0.0), number_member(doc, "rho")});
    }
    require_keys(doc, {"kind", "n", "blocks"});
    const json& raw = array_member(doc, "blocks");
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const json& b = raw[i];
        const std::string what = "block " + std::to_string(i + 1);
        if (!b.is_object())
            schema_error(what + " must be an object");
        for (const auto& [key, _] : b.items())
            if (key != "center" && key != "radius")
                schema_error("unexpected key \"" + key + "\" in " + what);
        const auto center = complex_list(member(b, "center"), what + " center");
        if (n >= 2 && center.size() != n)
            invariant_error(what + " center has " + std::to_string(center.size()) + " coordinates, expected " +
                            std::to_string(n));
        blocks.push_back(Block{n >= 2 ? validated_poly_point(center, n, what + " center") : PolyPoint{},
                               number_member(b, "radius")});
    }
    return RemovedBlocks::from_blocks(shape, n, std::move(blocks));
}

} // namespace

// ---- families -------------------------------------------------------------------------

complex family_point(const PunctureFamily& family, index_t k) {
    const double kd = static_cast<double>(k);
    return std::visit(overloaded{[&](const RadialFamily& f) {
                                     return std::polar(1.0 - std::pow(f.q, kd), kd * f.theta);
                                 },
                                 [&](const BoundaryOrbitFamily& f) {
                                     return std::polar(1.0 - f.c / std::pow(kd, f.p), kd * f.theta);
                                 }},
                      family);
}

double family_tail_modulus(const PunctureFamily& family, index_t n) {
    const double next = static_cast<double>(n) + 1.0;
    return std::visit(overloaded{[&](const RadialFamily& f) { return 1.0 - std::pow(f.q, next); },
                                 [&](const BoundaryOrbitFamily& f) { return 1.0 - f.c / std::pow(next, f.p); }},
                      family);
}

std::string_view family_name(const PunctureFamily& family) {
    return std::visit(overloaded{[](const RadialFamily&) { return std::string_view("radial"); },
                                 [](const BoundaryOrbitFamily&) { return std::string_view("boundary_orbit"); }},
                      family);
}

// ---- FinitePunctures ------------------------------------------------------------------

FinitePunctures::FinitePunctures(std::vector<DiskPoint> punctures) : punctures_(std::move(punctures)) {
    if (punctures_.empty())
        invariant_error("finite puncture set must be nonempty");
    for (std::size_t i = 0; i < punctures_.size(); ++i) {
        validated_point(punctures_[i].value(), "puncture " + std::to_string(i + 1));
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(punctures_[i].value() - punctures_[j].value()) <= min_separation)
                invariant_error("punctures " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                                " coincide (distance <= 1e-12)");
    }
}

// ---- SequencePunctures ----------------------------------------------------------------

SequencePunctures SequencePunctures::from_family(PunctureFamily family) {
    validate_family(family);
    SequencePunctures seq;
    seq.family_ = family;
    if (auto msg = check_tail_convergence(seq); !msg.empty())
        invariant_error(std::string(family_name(family)) + " family: " + msg);
    return seq;
}

SequencePunctures SequencePunctures::from_prefix(std::vector<DiskPoint> prefix, std::optional<double> tail_constant) {
    validate_tail_constant(tail_constant);
    // Reuses the finite-set checks: nonempty, interior, pairwise separated.
    FinitePunctures checked(prefix);
    SequencePunctures seq;
    seq.prefix_ = std::move(prefix);
    seq.tail_constant_ = tail_constant;
    return seq;
}

DiskPoint SequencePunctures::puncture_at(index_t k) const {
    if (k < 1)
        throw Error(ErrorCode::usage, "puncture indices start at 1");
    if (family_)
        return DiskPoint::trusted(family_point(*family_, k));
    if (k <= prefix_.size())
        return prefix_[k - 1];
    throw Error(ErrorCode::usage, "no generator: index " + std::to_string(k) + " is beyond the prefix of length " +
                                      std::to_string(prefix_.size()));
}

TailBound SequencePunctures::tail_lower_bound(index_t n) const {
    if (family_)
        return {family_tail_modulus(*family_, n), false};
    if (n < prefix_.size())
        return {0.0, false};
    if (tail_constant_)
        return {*tail_constant_, false};
    return {1.0, true};
}

std::string check_tail_convergence(const SequencePunctures& seq) {
    return check_tail_grid([&](index_t n) { return seq.tail_lower_bound(n).modulus; });
}

// ---- PolySequencePunctures ------------------------------------------------------------

PolySequencePunctures PolySequencePunctures::from_coordinates(std::vector<CoordinateSource> coordinates) {
    if (coordinates.empty())
        invariant_error("poly_sequence needs at least one coordinate");
    bool has_family = false;
    for (const CoordinateSource& src : coordinates) {
        std::visit(overloaded{[&](const RadialFamily& f) {
                                  validate_family(f);
                                  has_family = true;
                              },
                              [&](const BoundaryOrbitFamily& f) {
                                  validate_family(f);
                                  has_family = true;
                              },
                              [](const FixedCoordinate& c) { validated_point(c.value.value(), "fixed coordinate"); }},
                   src);
    }
    if (!has_family)
        invariant_error("poly_sequence needs at least one family coordinate (a constant sequence does not converge "
                        "to the boundary)");
    PolySequencePunctures seq;
    seq.dimension_ = coordinates.size();
    seq.coordinates_ = std::move(coordinates);
    if (auto msg = check_tail_grid([&](index_t n) { return seq.tail_lower_bound(n).modulus; }); !msg.empty())
        invariant_error("poly_sequence: " + msg);
    return seq;
}

PolySequencePunctures PolySequencePunctures::from_prefix(std::size_t dimension, std::vector<PolyPoint> prefix,
                                                         std::optional<double> tail_constant) {
    validate_tail_constant(tail_constant);
    if (dimension < 1)
        invariant_error("poly_sequence needs n >= 1");
    if (prefix.empty())
        invariant_error("poly_sequence puncture list must be nonempty");
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (prefix[i].dimension() != dimension)
            invariant_error("puncture " + std::to_string(i + 1) + " has wrong dimension");
        for (std::size_t j = 0; j < i; ++j)
            if (sup_distance(prefix[i], prefix[j]) <= min_separation)
                invariant_error("punctures " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " coincide");
    }
    PolySequencePunctures seq;
    seq.dimension_ = dimension;
    seq.prefix_ = std::move(prefix);
    seq.tail_constant_ = tail_constant;
    return seq;
}

PolyPoint PolySequencePunctures::puncture_at(index_t k) const {
    if (k < 1)
        throw Error(ErrorCode::usage, "puncture indices start at 1");
    if (!coordinates_.empty()) {
        std::vector<DiskPoint> pts;
        pts.reserve(dimension_);
        for (const CoordinateSource& src : coordinates_) {
            pts.push_back(std::visit(
                overloaded{[&](const RadialFamily& f) { return DiskPoint::trusted(family_point(PunctureFamily{f}, k)); },
                           [&](const BoundaryOrbitFamily& f) {
                               return DiskPoint::trusted(family_point(PunctureFamily{f}, k));
                           },
                           [](const FixedCoordinate& c) { return c.value; }},
                src));
        }
        return PolyPoint(std::move(pts));
    }
    if (k <= prefix_.size())
        return prefix_[k - 1];
    throw Error(ErrorCode::usage, "no generator: index " + std::to_string(k) + " is beyond the prefix of length " +
                                      std::to_string(prefix_.size()));
}

TailBound PolySequencePunctures::tail_lower_bound(index_t n) const {
    if (!coordinates_.empty()) {
        // A lower bound on one coordinate's modulus bounds the sup-modulus.
        double m = 0.0;
        for (const CoordinateSource& src : coordinates_)
            m = std::max(m, tail_modulus_of(src, n));
        return {m, false};
    }
    if (n < prefix_.size())
        return {0.0, false};
    if (tail_constant_)
        return {*tail_constant_, false};
    return {1.0, true};
}

SequencePunctures PolySequencePunctures::as_disk_sequence() const {
    if (dimension_ != 1)
        throw Error(ErrorCode::usage, "as_disk_sequence needs a one-dimensional sequence");
    if (!coordinates_.empty()) {
        return std::visit(overloaded{[](const RadialFamily& f) { return SequencePunctures::from_family(f); },
                                     [](const BoundaryOrbitFamily& f) { return SequencePunctures::from_family(f); },
                                     [](const FixedCoordinate&) -> SequencePunctures {
                                         throw Error(ErrorCode::invariant, "constant sequence");
                                     }},
                          coordinates_.front());
    }
    std::vector<DiskPoint> pts;
    for (const PolyPoint& p : prefix_)
        pts.push_back(p[0]);
    return SequencePunctures::from_prefix(std::move(pts), tail_constant_);
}

// ---- RemovedBlocks --------------------------------------------------------------------

bool block_contains(BlockShape shape, const Block& block, const PolyPoint& p) {
    const double d = shape == BlockShape::polydisk ? sup_distance(p, block.center) : euclidean_distance(p, block.center);
    return d <= block.radius;
}

RemovedBlocks RemovedBlocks::from_blocks(BlockShape shape, std::size_t dimension, std::vector<Block> blocks) {
    if (dimension < 2)
        invariant_error("removed blocks need n >= 2");
    if (blocks.empty())
        invariant_error("removed blocks list must be nonempty");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Block& b = blocks[i];
        const std::string what = "block " + std::to_string(i + 1);
        if (b.center.dimension() != dimension)
            invariant_error(what + " center has wrong dimension");
        if (!(b.radius > 0.0) || !std::isfinite(b.radius))
            invariant_error(what + " radius must be positive, got " + format_double(b.radius));
        // Both shapes project onto each coordinate as a disk of the same radius.
        if (!(b.center.sup_modulus() + b.radius < 1.0))
            invariant_error(what + " is not strictly inside the unit polydisk (max |center_j| + radius >= 1)");
        for (std::size_t j = 0; j < i; ++j) {
            const Block& o = blocks[j];
            const double d = shape == BlockShape::polydisk ? sup_distance(b.center, o.center)
                                                           : euclidean_distance(b.center, o.center);
            if (!(d > b.radius + o.radius))
                invariant_error("blocks " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                                " have intersecting closures");
        }
    }
    RemovedBlocks out;
    out.shape_ = shape;
    out.dimension_ = dimension;
    out.blocks_ = std::move(blocks);
    return out;
}

RemovedBlocks RemovedBlocks::from_family(BlockShape shape, std::size_t dimension, RadialBlockFamily family) {
    if (dimension < 2)
        invariant_error("removed blocks need n >= 2");
    if (!(family.q > 0.0 && family.q < 1.0))
        invariant_error("radial_blocks family needs 0 < q < 1, got q = " + format_double(family.q));
    const double rho_max = (1.0 - family.q) / (1.0 + family.q);
    if (!(family.rho > 0.0 && family.rho < rho_max))
        invariant_error("radial_blocks family needs 0 < rho < (1-q)/(1+q) = " + format_double(rho_max) +
                        " for disjoint closures, got rho = " + format_double(family.rho));
    if (!std::isfinite(family.theta))
        invariant_error("radial_blocks family theta must be finite");
    RemovedBlocks out;
    out.shape_ = shape;
    out.dimension_ = dimension;
    out.family_ = family;
    return out;
}

Block RemovedBlocks::block_at(index_t k) const {
    if (k < 1)
        throw Error(ErrorCode::usage, "block indices start at 1");
    if (family_) {
        const double kd = static_cast<double>(k);
        const double qk = std::pow(family_->q, kd);
        std::vector<DiskPoint> center(dimension_, DiskPoint{});
        center[0] = DiskPoint::trusted(std::polar(1.0 - qk, kd * family_->theta));
        return Block{PolyPoint(std::move(center)), family_->rho * qk};
    }
    if (k <= blocks_.size())
        return blocks_[k - 1];
    throw Error(ErrorCode::usage, "no generator: block index " + std::to_string(k) + " is beyond the list");
}

TailBound RemovedBlocks::tail_lower_bound(index_t n) const {
    if (family_) {
        // Every point of block k has sup-modulus >= |c_k| - r_k = 1 - (1 + rho) q^k.
        const double m = 1.0 - (1.0 + family_->rho) * std::pow(family_->q, static_cast<double>(n) + 1.0);
        return {std::max(0.0, m), false};
    }
    if (n < blocks_.size())
        return {0.0, false};
    return {1.0, true};
}

bool RemovedBlocks::in_removed_set(const PolyPoint& p) const {
    const double s = p.sup_modulus();
    for (index_t k = 1;; ++k) {
        const TailBound tail = tail_lower_bound(k - 1);
        if (tail.exhausted || tail.modulus > s)
            return false;
        if (block_contains(shape_, block_at(k), p))
            return true;
    }
}

// ---- documents ------------------------------------------------------------------------

std::string_view domain_kind(const DomainSpec& domain) {
    return std::visit(overloaded{[](const FinitePunctures&) { return std::string_view("finite_punctures"); },
                                 [](const SequencePunctures&) { return std::string_view("sequence"); },
                                 [](const PolySequencePunctures&) { return std::string_view("poly_sequence"); },
                                 [](const RemovedBlocks& b) {
                                     return std::string_view(b.shape() == BlockShape::polydisk ? "removed_polydisks"
                                                                                               : "removed_balls");
                                 },
                                 [](const Annulus&) { return std::string_view("annulus"); },
                                 [](const ProductOfBalls&) { return std::string_view("product_of_balls"); }},
                      domain);
}

DomainSpec parse_domain_spec(const nlohmann::json& doc) {
    if (!doc.is_object())
        schema_error("domain document must be an object");
    const json& kind_value = member(doc, "kind");
    if (!kind_value.is_string())
        schema_error("kind must be a string");
    const std::string kind = kind_value.get<std::string>();
    if (kind == "finite_punctures")
        return parse_finite(doc);
    if (kind == "sequence")
        return parse_sequence(doc);
    if (kind == "poly_sequence")
        return parse_poly_sequence(doc);
    if (kind == "removed_polydisks")
        return parse_blocks(doc, BlockShape::polydisk);
    if (kind == "removed_balls")
        return parse_blocks(doc, BlockShape::ball);
    if (kind == "annulus") {
        require_keys(doc, {"kind", "r"});
        const double r = number_member(doc, "r");
        if (!(r > 0.0 && r < 1.0))
            invariant_error("annulus needs 0 < r < 1, got r = " + format_double(r));
        return Annulus{r};
    }
    if (kind == "product_of_balls") {
        require_keys(doc, {"kind", "n"});
        const std::size_t n = count_member(doc, "n");
        if (n < 1)
            invariant_error("product_of_balls needs n >= 1");
        return ProductOfBalls{n};
    }
    schema_error("unknown kind \"" + kind + "\"");
}

DomainSpec parse_domain_spec(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        schema_error(std::string("malformed document: ") + e.what());
    }
    return parse_domain_spec(doc);
}

DomainSpec load_domain_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io, "cannot read domain file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_domain_spec(std::string_view(buf.str()));
}

nlohmann::json to_json(const DomainSpec& domain) {
    json doc;
    doc["kind"] = std::string(domain_kind(domain));
    std::visit(overloaded{[&](const FinitePunctures& d) {
                              doc["points"] = json::array();
                              for (const DiskPoint& p : d.punctures())
                                  doc["points"].push_back(point_json(p.value()));
                          },
                          [&](const SequencePunctures& d) {
                              if (d.family()) {
                                  write_family(doc, *d.family());
                                  return;
                              }
                              doc["points"] = json::array();
                              for (const DiskPoint& p : d.prefix())
                                  doc["points"].push_back(point_json(p.value()));
                              if (d.tail_constant())
                                  doc["tail_modulus_constant"] = *d.tail_constant();
                          },
                          [&](const PolySequencePunctures& d) {
                              doc["n"] = d.dimension();
                              if (!d.coordinates().empty()) {
                                  doc["coordinates"] = json::array();
                                  for (const CoordinateSource& src : d.coordinates()) {
                                      json c;
                                      std::visit(overloaded{[&](const RadialFamily& f) { write_family(c, f); },
                                                            [&](const BoundaryOrbitFamily& f) { write_family(c, f); },
                                                            [&](const FixedCoordinate& f) {
                                                                c["point"] = point_json(f.value.value());
                                                            }},
                                                 src);
                                      doc["coordinates"].push_back(c);
                                  }
                                  return;
                              }
                              doc["points"] = json::array();
                              for (const PolyPoint& p : d.prefix())
                                  doc["points"].push_back(poly_point_json(p));
                              if (d.tail_constant())
                                  doc["tail_modulus_constant"] = *d.tail_constant();
                          },
                          [&](const RemovedBlocks& d) {
                              doc["n"] = d.dimension();
                              if (d.family()) {
                                  doc["family"] = "radial_blocks";
                                  doc["q"] = d.family()->q;
                                  doc["theta"] = d.family()->theta;
                                  doc["rho"] = d.family()->rho;
                                  return;
                              }
                              doc["blocks"] = json::array();
                              for (const Block& b : d.blocks())
                                  doc["blocks"].push_back({{"center", poly_point_json(b.center)}, {"radius", b.radius}});
                          },
                          [&](const Annulus& d) { doc["r"] = d.inner_radius; },
                          [&](const ProductOfBalls& d) { doc["n"] = d.n; }},
               domain);
    return doc;
}

} // namespace squeeze
