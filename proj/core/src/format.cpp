#include "gdpcast/format.hpp"

#include <array>
#include <charconv>

namespace gdpcast {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;  // 32 bytes always fit the shortest representation of a double
    return std::string(buf.data(), end);
}

}  // namespace gdpcast
