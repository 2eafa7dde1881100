#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latemetrics {

// Thrown by statistics over an empty sample.
struct EmptySampleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a metric is undefined for the sample shape (too few points,
// zero spread).
struct DegenerateSampleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Trace file rejection. Carries the 1-based line number of the offending
// record.
struct TraceParseError : std::runtime_error {
    std::size_t line;
    TraceParseError(std::size_t line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Config file rejection with the offending key (or file-level context).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Report comparison rejection: the two reports were produced under different
// metric conventions.
struct ConventionMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace latemetrics
