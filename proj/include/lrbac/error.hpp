#pragma once

#include <stdexcept>
#include <string>

namespace lrbac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceLocation {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, SourceLocation loc)
      : Error(loc.to_string() + ": " + what), location_(loc) {}

  SourceLocation location() const { return location_; }

 private:
  SourceLocation location_;
};

// Raised when a role mentions a generator outside the universe under
// analysis, or when a universe is too large for exhaustive enumeration.
class UniverseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lrbac
