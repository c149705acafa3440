#pragma once

#include <string>
#include <string_view>

namespace pbitsa {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

// Inverse of format_double; throws invalid_input on malformed text.
double parse_double(std::string_view text);

}  // namespace pbitsa
