#pragma once

#include <stdexcept>
#include <string>

namespace rdc {

enum class ErrorKind {
  kMalformedInput,
  kNonConvergence,
};

/// Raised for rejected inputs and for numerical failures.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error malformed(const std::string& what) {
  return Error(ErrorKind::kMalformedInput, what);
}

inline Error non_convergence(const std::string& what) {
  return Error(ErrorKind::kNonConvergence, what);
}

}  // namespace rdc
