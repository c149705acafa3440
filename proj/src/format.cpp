#include "pbitsa/format.hpp"

#include <array>
#include <charconv>

#include "pbitsa/error.hpp"

namespace pbitsa {

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) fail(ErrorKind::invalid_input, "cannot format number");
  return std::string(buffer.data(), ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    fail(ErrorKind::invalid_input, "malformed number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace pbitsa
