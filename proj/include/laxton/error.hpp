#pragma once

#include <stdexcept>
#include <string>

namespace laxton {

enum class ErrorKind {
  InvalidInput,     // violated mathematical precondition (p | Q, D = 0, not prime, ...)
  NotInvertible,    // element is not a unit in the ambient ring
  ContextMismatch,  // operands live over different (P, Q) or rings
  Domain,           // operation undefined for this kind of input (e.g. reducible f)
  TooLarge,         // outside the supported desk-scale range
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace laxton
