#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace synchrolab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: out-of-range states or letters, bad probability
/// vectors, unparsable files.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The request exceeds a hard size guard (power-set search, pair table, ...).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Some pair of surviving states admits no merging word.
class NotSynchronizable : public Error {
 public:
  NotSynchronizable(std::uint32_t x, std::uint32_t y)
      : Error("states " + std::to_string(x) + " and " + std::to_string(y) +
              " cannot be merged"),
        stuck_(x, y) {}

  std::pair<std::uint32_t, std::uint32_t> stuck_pair() const { return stuck_; }

 private:
  std::pair<std::uint32_t, std::uint32_t> stuck_;
};

}  // namespace synchrolab
