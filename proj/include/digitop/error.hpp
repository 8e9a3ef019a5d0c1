#ifndef DIGITOP_ERROR_HPP_
#define DIGITOP_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace digitop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph6 input. `offset` is the byte position of the problem.
class DecodeError : public Error {
 public:
  DecodeError(std::size_t offset, const std::string& what)
      : Error("graph6 decode error at byte " + std::to_string(offset) + ": " +
              what),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Argument outside the supported domain (n = 0, n > 62 for graph6, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated, e.g. classifying a disconnected
/// image.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// No lattice realization exists for the requested construction.
class UnrealizableError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace digitop

#endif  // DIGITOP_ERROR_HPP_
