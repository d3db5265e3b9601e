#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace commcalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `position` is a 0-based character offset, or npos
/// when the failure is not tied to one location (e.g. a missing line).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = std::string::npos)
      : Error(position == std::string::npos
                  ? what
                  : what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Operands living in free groups of different rank, or a generator index
/// outside 1..rank.
class RankError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (word length, basis size, instantiation size,
/// nilpotency class) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace commcalc
