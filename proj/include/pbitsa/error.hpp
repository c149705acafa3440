#pragma once

#include <stdexcept>
#include <string>

namespace pbitsa {

enum class ErrorKind {
  invalid_input,
  parse,
  config,
  degenerate_model,
  lookup,
  io,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; the C API maps `kind()` onto a
// status code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what) {}

  // "source:line: detail", as compilers print it.
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(ErrorKind::parse, source + ":" + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace pbitsa
