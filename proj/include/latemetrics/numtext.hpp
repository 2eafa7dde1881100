#pragma once

#include <string>
#include <string_view>

namespace latemetrics {

// Shortest round-trip decimal form of a double (std::to_chars). The same
// value always prints the same bytes and parses back exactly, which keeps
// serialized runs byte-identical and report round-trips lossless.
std::string format_double(double value);

// Exact inverse of format_double; accepts any from_chars-compatible decimal.
// Throws std::invalid_argument on malformed input.
double parse_double(std::string_view text);

}  // namespace latemetrics
