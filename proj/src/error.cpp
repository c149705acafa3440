#include "pbitsa/error.hpp"

namespace pbitsa {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::config: return "config error";
    case ErrorKind::degenerate_model: return "degenerate model";
    case ErrorKind::lookup: return "lookup error";
    case ErrorKind::io: return "I/O error";
  }
  return "error";
}

}  // namespace pbitsa
