#include "squeeze/error.hpp"

namespace squeeze {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::schema: return "schema";
    case ErrorCode::invariant: return "invariant";
    case ErrorCode::not_in_domain: return "not_in_domain";
    case ErrorCode::uncertified: return "uncertified";
    case ErrorCode::usage: return "usage";
    case ErrorCode::io: return "io";
    }
    return "unknown";
}

} // namespace squeeze
