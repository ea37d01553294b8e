#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failure (or an evaluation
// that could not be certified), 2 usage/parse/validation, 3 point outside the domain, 4 I/O.

#include "squeeze/domain.hpp"
#include "squeeze/hyperbolic.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace squeeze::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_usage = 2,
    exit_not_in_domain = 3,
    exit_io = 4,
};

/// `re,im` or `re,im;re,im;...`. Throws Error{usage} on malformed text.
std::vector<complex> parse_point(const std::string& text);

struct GridJob {
    DomainSpec domain;
    std::array<double, 4> rect{};  // re_min, re_max, im_min, im_max
    std::size_t nx = 2;
    std::size_t ny = 2;
    std::string invariant = "squeezing";
};

/// CSV text for the grid: header `re,im,value,truncation_index,certified`, im outer and re
/// inner. Identical output for every thread count.
std::string render_grid(const GridJob& job, unsigned threads);

int cmd_eval(const std::string& domain_path, const std::string& point, const std::string& invariant,
             double mesh_tolerance, std::ostream& out, std::ostream& err);
int cmd_grid(const std::string& domain_path, const std::string& rect, const std::string& resolution,
             const std::string& invariant, const std::string& output_path, unsigned threads, std::ostream& err);
int cmd_verify(const std::string& suite, std::uint64_t seed, std::size_t trials, const std::string& format,
               std::ostream& out, std::ostream& err);
int cmd_compare(const std::string& domain_path, const std::string& point, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace squeeze::cli
