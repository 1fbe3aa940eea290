#pragma once

#include <stdexcept>
#include <string>

namespace tiltsmith {

// Reason codes double as the CLI's machine-readable failure reasons.
enum class ErrorKind {
  Config,        // malformed input or missing configuration
  Precondition,  // operation called outside its contract
  Inconclusive,  // an enumeration or depth cap was hit
  Verification,  // a mathematical check failed
  Internal,      // an invariant that should hold did not
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Inconclusive: return "inconclusive";
    case ErrorKind::Verification: return "verification";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace tiltsmith
