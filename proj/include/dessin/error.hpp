#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dessin {

/// Machine-readable classification of library failures. The CLI maps these
/// onto its error JSON; callers can switch on them without parsing messages.
enum class ErrorKind {
  invalid_size,
  degree_mismatch,
  parse,
  disconnected,
  limit_exceeded,
  ambiguity,
  basepoint_too_close,
  conditioning,
  tracking_failure,
  invalid_path,
  nonconvergence,
  wrong_class,
  branch_singularity,
  precondition,
  internal_inconsistency,
};

inline constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_size: return "invalid_size";
    case ErrorKind::degree_mismatch: return "degree_mismatch";
    case ErrorKind::parse: return "parse";
    case ErrorKind::disconnected: return "disconnected";
    case ErrorKind::limit_exceeded: return "limit_exceeded";
    case ErrorKind::ambiguity: return "ambiguity";
    case ErrorKind::basepoint_too_close: return "basepoint_too_close";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::tracking_failure: return "tracking_failure";
    case ErrorKind::invalid_path: return "invalid_path";
    case ErrorKind::nonconvergence: return "nonconvergence";
    case ErrorKind::wrong_class: return "wrong_class";
    case ErrorKind::branch_singularity: return "branch_singularity";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::internal_inconsistency: return "internal_inconsistency";
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

/// Carries the measured quantity that made a numerical decision unsafe
/// (cluster gap, best residual, step size...).
class NumericError : public Error {
 public:
  NumericError(ErrorKind kind, const std::string& what, double value)
      : Error(kind, what), value_(value) {}

  double value() const noexcept { return value_; }

 private:
  double value_;
};

}  // namespace dessin
