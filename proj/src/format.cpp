#include "squeeze/format.hpp"

#include <array>
#include <charconv>

namespace squeeze {

std::string format_double(double x) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), end);
}

} // namespace squeeze
