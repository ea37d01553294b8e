#pragma once

#include <string>

namespace squeeze {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

} // namespace squeeze
