#pragma once

#include <stdexcept>
#include <string>

namespace squeeze {

enum class ErrorCode {
    schema,        // document does not match the domain schema
    invariant,     // well-formed document describing an invalid domain
    not_in_domain, // query point outside the domain (or numerically boundary-adjacent)
    uncertified,   // infinite infimum or boundary minimum could not be certified
    usage,         // bad arguments to an operation
    io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace squeeze
