#pragma once

// Domain families: punctured disks and polydisks, polydisks minus closed polydisks or
// balls, annuli and products of balls. Infinite puncture sets carry a tail certificate:
// a closed-form lower bound m(N) on the modulus of every puncture with index > N.

#include "squeeze/hyperbolic.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace squeeze {

using index_t = std::uint64_t;

/// a_k = (1 - q^k) e^{i k theta}, 0 < q < 1. Tail modulus m(N) = 1 - q^{N+1}.
struct RadialFamily {
    double q = 0.5;
    double theta = 1.0;
    friend bool operator==(const RadialFamily&, const RadialFamily&) = default;
};

/// a_k = (1 - c / k^p) e^{i k theta}, 0 < c < 1, p > 0. Tail modulus m(N) = 1 - c / (N+1)^p.
struct BoundaryOrbitFamily {
    double c = 0.5;
    double p = 1.0;
    double theta = 1.0;
    friend bool operator==(const BoundaryOrbitFamily&, const BoundaryOrbitFamily&) = default;
};

using PunctureFamily = std::variant<RadialFamily, BoundaryOrbitFamily>;

complex family_point(const PunctureFamily& family, index_t k);
double family_tail_modulus(const PunctureFamily& family, index_t n);
std::string_view family_name(const PunctureFamily& family);

/// Result of a tail query. `exhausted` means there are no punctures beyond N at all, so
/// the infimum is exactly the minimum over the first N.
struct TailBound {
    double modulus = 0.0;
    bool exhausted = false;
};

class FinitePunctures {
public:
    explicit FinitePunctures(std::vector<DiskPoint> punctures);

    std::span<const DiskPoint> punctures() const noexcept { return punctures_; }
    std::size_t size() const noexcept { return punctures_.size(); }

    friend bool operator==(const FinitePunctures&, const FinitePunctures&) = default;

private:
    std::vector<DiskPoint> punctures_;
};

/// An infinite (or prefix-only) puncture sequence a_1, a_2, ...
class SequencePunctures {
public:
    static SequencePunctures from_family(PunctureFamily family);
    /// Without a tail constant the sequence is exactly its prefix. With one, the prefix is
    /// followed by unknown punctures all of modulus >= tail_constant.
    static SequencePunctures from_prefix(std::vector<DiskPoint> prefix,
                                         std::optional<double> tail_constant = std::nullopt);

    /// k >= 1. Bitwise deterministic.
    DiskPoint puncture_at(index_t k) const;
    TailBound tail_lower_bound(index_t n) const;

    const std::optional<PunctureFamily>& family() const noexcept { return family_; }
    std::span<const DiskPoint> prefix() const noexcept { return prefix_; }
    const std::optional<double>& tail_constant() const noexcept { return tail_constant_; }

    friend bool operator==(const SequencePunctures&, const SequencePunctures&) = default;

private:
    SequencePunctures() = default;

    std::vector<DiskPoint> prefix_;
    std::optional<PunctureFamily> family_;
    std::optional<double> tail_constant_;
};

/// A coordinate held fixed across the whole sequence of polydisk punctures.
struct FixedCoordinate {
    DiskPoint value;
    friend bool operator==(const FixedCoordinate&, const FixedCoordinate&) = default;
};

using CoordinateSource = std::variant<RadialFamily, BoundaryOrbitFamily, FixedCoordinate>;

/// Puncture sequence in the polydisk. The tail modulus bounds max_j |a_j^k| from below.
class PolySequencePunctures {
public:
    /// Coordinate-wise generators; at least one coordinate must be a family.
    static PolySequencePunctures from_coordinates(std::vector<CoordinateSource> coordinates);
    /// Finite puncture set (optionally followed by a tail of sup-modulus >= tail_constant).
    static PolySequencePunctures from_prefix(std::size_t dimension, std::vector<PolyPoint> prefix,
                                             std::optional<double> tail_constant = std::nullopt);

    std::size_t dimension() const noexcept { return dimension_; }
    PolyPoint puncture_at(index_t k) const;
    TailBound tail_lower_bound(index_t n) const;

    std::span<const CoordinateSource> coordinates() const noexcept { return coordinates_; }
    std::span<const PolyPoint> prefix() const noexcept { return prefix_; }
    const std::optional<double>& tail_constant() const noexcept { return tail_constant_; }

    /// The one-dimensional sequence when dimension() == 1.
    SequencePunctures as_disk_sequence() const;

    friend bool operator==(const PolySequencePunctures&, const PolySequencePunctures&) = default;

private:
    PolySequencePunctures() = default;

    std::size_t dimension_ = 0;
    std::vector<CoordinateSource> coordinates_;
    std::vector<PolyPoint> prefix_;
    std::optional<double> tail_constant_;
};

enum class BlockShape { polydisk, ball };

/// A closed polydisk or closed Euclidean ball removed from the polydisk.
struct Block {
    PolyPoint center;
    double radius = 0.0;
    friend bool operator==(const Block&, const Block&) = default;
};

/// Block k has center ((1 - q^k) e^{i k theta}, 0, ..., 0) and radius rho q^k, with
/// 0 < q < 1 and 0 < rho < (1 - q) / (1 + q) so that closures are disjoint in both norms.
struct RadialBlockFamily {
    double q = 0.5;
    double theta = 1.0;
    double rho = 0.25;
    friend bool operator==(const RadialBlockFamily&, const RadialBlockFamily&) = default;
};

class RemovedBlocks {
public:
    static RemovedBlocks from_blocks(BlockShape shape, std::size_t dimension, std::vector<Block> blocks);
    static RemovedBlocks from_family(BlockShape shape, std::size_t dimension, RadialBlockFamily family);

    BlockShape shape() const noexcept { return shape_; }
    std::size_t dimension() const noexcept { return dimension_; }
    const std::optional<RadialBlockFamily>& family() const noexcept { return family_; }
    std::span<const Block> blocks() const noexcept { return blocks_; }

    /// k >= 1.
    Block block_at(index_t k) const;
    /// Lower bound on max_j |w_j| over all w in blocks with index > n.
    TailBound tail_lower_bound(index_t n) const;

    /// True when p lies in the closure of some removed block (family blocks are checked
    /// up to the first index whose tail bound excludes p).
    bool in_removed_set(const PolyPoint& p) const;

    friend bool operator==(const RemovedBlocks&, const RemovedBlocks&) = default;

private:
    RemovedBlocks() = default;

    BlockShape shape_ = BlockShape::polydisk;
    std::size_t dimension_ = 0;
    std::vector<Block> blocks_;
    std::optional<RadialBlockFamily> family_;
};

bool block_contains(BlockShape shape, const Block& block, const PolyPoint& p);

/// {r < |z| < 1}
struct Annulus {
    double inner_radius = 0.25;
    friend bool operator==(const Annulus&, const Annulus&) = default;
};

/// n copies of the unit ball of C^n, a domain in C^{n^2}.
struct ProductOfBalls {
    std::size_t n = 1;
    friend bool operator==(const ProductOfBalls&, const ProductOfBalls&) = default;
};

using DomainSpec = std::variant<FinitePunctures, SequencePunctures, PolySequencePunctures, RemovedBlocks,
                                Annulus, ProductOfBalls>;

/// The schema "kind" string of a domain.
std::string_view domain_kind(const DomainSpec& domain);

/// Throws Error{schema} for documents that do not match the schema and Error{invariant}
/// for well-formed documents describing invalid domains.
DomainSpec parse_domain_spec(const nlohmann::json& document);
DomainSpec parse_domain_spec(std::string_view text);
inline DomainSpec parse_domain_spec(const char* text) { return parse_domain_spec(std::string_view(text)); }
inline DomainSpec parse_domain_spec(const std::string& text) { return parse_domain_spec(std::string_view(text)); }
DomainSpec load_domain_spec(const std::string& path);

nlohmann::json to_json(const DomainSpec& domain);

/// Sampled checks of a tail certificate: nondecreasing on a grid of N up to 10^6 and
/// m(10^6) > 1 - 1e-6. Returns an empty string on success, else a diagnostic.
std::string check_tail_convergence(const SequencePunctures& seq);

} // namespace squeeze
