#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conjo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: type descriptors, node lists, flags.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An enumeration outgrew its configured size cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t partial_count)
      : Error(what), partial_count_(partial_count) {}
  std::size_t partial_count() const { return partial_count_; }

 private:
  std::size_t partial_count_;
};

// An output file or directory could not be written.
class OutputError : public Error {
 public:
  using Error::Error;
};

// A mathematical invariant that must hold by construction did not.
// Always an internal bug, never a user error.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

#define CONJO_ENSURE(cond, msg)                                          \
  do {                                                                    \
    if (!(cond)) {                                                        \
      throw ::conjo::InvariantViolation(std::string(__func__) + ": " + \
                                        (msg));                           \
    }                                                                     \
  } while (0)

}  // namespace conjo
