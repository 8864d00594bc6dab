#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqdist {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Precondition violations: bad modulus, non-unit residue, wrong branch.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Structural violations inside otherwise-valid input (e.g. sign pairing).
class ConstraintError : public DomainError {
 public:
  explicit ConstraintError(const std::string& what) : DomainError(what) {}
};

// Enumeration would exceed the configured budget.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(what) {}
};

// Literal syntax errors carry the offending position (0-based).
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DomainError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace eqdist
