#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace latemetrics {

// All simulation time is carried as integer microseconds. Doubles appear only
// at the configuration and reporting boundaries, so interval arithmetic and
// set measures stay exact.

struct Duration {
    std::int64_t us = 0;

    static constexpr Duration micros(std::int64_t v) { return Duration{v}; }
    static Duration from_seconds(double s);

    double seconds() const { return static_cast<double>(us) * 1e-6; }

    auto operator<=>(const Duration&) const = default;

    Duration& operator+=(Duration d) { us += d.us; return *this; }
    Duration& operator-=(Duration d) { us -= d.us; return *this; }
};

struct TimePoint {
    std::int64_t us = 0;

    static constexpr TimePoint micros(std::int64_t v) { return TimePoint{v}; }
    static TimePoint from_seconds(double s);

    double seconds() const { return static_cast<double>(us) * 1e-6; }

    auto operator<=>(const TimePoint&) const = default;
};

constexpr Duration operator+(Duration a, Duration b) { return Duration{a.us + b.us}; }
constexpr Duration operator-(Duration a, Duration b) { return Duration{a.us - b.us}; }
constexpr Duration operator*(Duration a, std::int64_t k) { return Duration{a.us * k}; }

constexpr TimePoint operator+(TimePoint t, Duration d) { return TimePoint{t.us + d.us}; }
constexpr TimePoint operator-(TimePoint t, Duration d) { return TimePoint{t.us - d.us}; }
constexpr Duration operator-(TimePoint a, TimePoint b) { return Duration{a.us - b.us}; }

// Parses "250us", "100ms", "1.5s", "30m", "6h", "4d". Unit suffix required.
Duration parse_duration(const std::string& text);

// Inverse of parse_duration for round-trippable config echoes ("100ms", "5s").
std::string format_duration(Duration d);

}  // namespace latemetrics
