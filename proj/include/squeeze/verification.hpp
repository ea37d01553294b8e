#pragma once

// Independent oracles and check suites. Oracles evaluate the defining formulas naively
// (brute-force infima, dense boundary grids) and never call the certified fast paths.

#include "squeeze/domain.hpp"
#include "squeeze/hyperbolic.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace squeeze {

/// 64-bit linear congruential generator, x' = a x + c (mod 2^64), with Knuth's MMIX
/// constants a = 6364136223846793005, c = 1442695040888963407. Doubles use the top 53 bits.
class Lcg64 {
public:
    static constexpr std::uint64_t multiplier = 6364136223846793005ULL;
    static constexpr std::uint64_t increment = 1442695040888963407ULL;

    explicit Lcg64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ = state_ * multiplier + increment;
        return state_;
    }
    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Uniform in {lo, ..., hi}.
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) noexcept { return lo + next() % (hi - lo + 1); }

private:
    std::uint64_t state_;
};

/// Uniform (by area) in the disk of the given radius.
complex random_disk_point(Lcg64& rng, double radius);

/// 1-8 punctures uniform in the disk of radius 0.95 and a query point uniform in radius 0.9
/// at Euclidean distance > 1e-3 from every puncture.
struct RandomPuncturedDisk {
    FinitePunctures domain;
    DiskPoint point;
};
RandomPuncturedDisk random_punctured_disk(Lcg64& rng);

struct VerificationReport {
    std::string check_name;
    bool passed = false;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string details;
};

/// `name<TAB>PASS|FAIL<TAB>observed<TAB>expected<TAB>tolerance`, one line per report.
std::string format_reports_text(const std::vector<VerificationReport>& reports);
nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports);
std::vector<VerificationReport> reports_from_json(const nlohmann::json& doc);

/// min_{k <= count} pseudo_hyperbolic(z, a_k). Throws when the sequence runs out first.
double brute_force_infimum(const SequencePunctures& domain, const DiskPoint& z, index_t count);
double brute_force_infimum(const PolySequencePunctures& domain, const PolyPoint& z, index_t count);

/// Minimum of polydisk_caratheodory_tanh(z, .) over a uniform parameter grid on the block
/// boundary with at most `samples` points. Grids for 2s samples contain the grid for s, so
/// the result is nonincreasing along a doubling schedule.
double boundary_min_oracle(BlockShape shape, const Block& block, const PolyPoint& z, std::size_t samples);

/// Random Mobius invariance of the punctured-disk squeezing function.
std::vector<VerificationReport> invariance_suite(std::size_t trials, std::uint64_t seed);

/// Certified truncation against brute force over max(10 N, N + 1000) punctures.
std::vector<VerificationReport> truncation_suite(std::size_t trials, std::uint64_t seed);

/// Boundary minimization against the dense-grid oracle.
std::vector<VerificationReport> boundary_oracle_suite(std::size_t samples = 1'000'000);

/// Reproduction of the closed-form claims: annulus counterexample, product of balls,
/// finite punctures and the equality of the squeezing function and the Fridman invariant.
std::vector<VerificationReport> paper_claims_suite(std::uint64_t seed = 42);

/// Suite by name: paper-claims, invariance, truncation, boundary-oracle or all. Reports are
/// sorted by check name. Throws Error{usage} on an unknown name.
std::vector<VerificationReport> run_suite(const std::string& name, std::uint64_t seed, std::size_t trials);

bool all_passed(const std::vector<VerificationReport>& reports);

} // namespace squeeze
