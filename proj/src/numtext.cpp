#include "latemetrics/numtext.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace latemetrics {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::invalid_argument("cannot format double");
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("not a valid number: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace latemetrics
