#pragma once

#include <stdexcept>
#include <string>

namespace pargrade {

/// Base of every error thrown by the library. `kind()` is the stable error
/// name (e.g. "NotNilpotent") that the CLI prints and tests match on.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define PARGRADE_DEFINE_ERROR(Name)                                     \
  class Name : public ::pargrade::Error {                               \
   public:                                                              \
    explicit Name(const std::string& what) : ::pargrade::Error(#Name, what) {} \
  }

/// Input that violates a documented precondition without a more specific name.
PARGRADE_DEFINE_ERROR(PreconditionViolated);
/// Malformed text input (matrix strings, s-expressions, fixtures).
PARGRADE_DEFINE_ERROR(ParseError);

}  // namespace pargrade
