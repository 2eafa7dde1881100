#include "latemetrics/time.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace latemetrics {

namespace {

std::int64_t seconds_to_us(double s) {
    double us = s * 1e6;
    if (!std::isfinite(us)) throw std::invalid_argument("duration not finite");
    return std::llround(us);
}

}  // namespace

Duration Duration::from_seconds(double s) { return Duration{seconds_to_us(s)}; }
TimePoint TimePoint::from_seconds(double s) { return TimePoint{seconds_to_us(s)}; }

Duration parse_duration(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty duration");
    std::size_t pos = 0;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
            text[pos] == '+')) {
        ++pos;
    }
    if (pos == 0) throw std::invalid_argument("duration must start with a number: '" + text + "'");
    const std::string number = text.substr(0, pos);
    const std::string unit = text.substr(pos);

    char* end = nullptr;
    const double value = std::strtod(number.c_str(), &end);
    if (end == nullptr || *end != '\0') {
        throw std::invalid_argument("bad duration number: '" + number + "'");
    }

    double unit_us = 0;
    if (unit == "us") unit_us = 1;
    else if (unit == "ms") unit_us = 1e3;
    else if (unit == "s") unit_us = 1e6;
    else if (unit == "m") unit_us = 60e6;
    else if (unit == "h") unit_us = 3600e6;
    else if (unit == "d") unit_us = 86400e6;
    else throw std::invalid_argument("bad duration unit '" + unit + "' (use us/ms/s/m/h/d)");

    const double us = value * unit_us;
    if (!std::isfinite(us) || us < 0) throw std::invalid_argument("duration out of range: '" + text + "'");
    return Duration{std::llround(us)};
}

std::string format_duration(Duration d) {
    const std::int64_t us = d.us;
    auto whole = [&](std::int64_t unit) { return us % unit == 0; };
    if (us == 0) return "0s";
    if (whole(3600'000'000)) return std::to_string(us / 3600'000'000) + "h";
    if (whole(60'000'000)) return std::to_string(us / 60'000'000) + "m";
    if (whole(1'000'000)) return std::to_string(us / 1'000'000) + "s";
    if (whole(1'000)) return std::to_string(us / 1'000) + "ms";
    return std::to_string(us) + "us";
}

}  // namespace latemetrics
