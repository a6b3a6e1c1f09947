#pragma once

#include <stdexcept>
#include <string>

namespace ineqlab {

enum class ErrorKind {
  domain,         // argument outside an operation's precondition
  singularity,    // non-integrable blow-up detected by a quadrature
  numerical,      // NaN/overflow during an iterative computation
  inconsistency,  // inputs contradict each other (e.g. u != 0 with zero gradient)
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::inconsistency: return "inconsistency";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::domain, what);
}

}  // namespace ineqlab
