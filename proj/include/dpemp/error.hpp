#pragma once

#include <stdexcept>
#include <string>

namespace dpemp {

enum class ErrorKind {
  InvalidArgument,
  InvalidOrigin,
  ZenithDegenerate,
  BelowHorizon,
  DegenerateGeometry,
  ParallelLines,
  UndefinedCriticalPoint,
};

const char* to_string(ErrorKind kind);

/// Raised by every library operation that rejects its input geometry or arguments.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::InvalidOrigin: return "invalid origin";
    case ErrorKind::ZenithDegenerate: return "zenith-degenerate geometry";
    case ErrorKind::BelowHorizon: return "satellite below horizon";
    case ErrorKind::DegenerateGeometry: return "degenerate geometry";
    case ErrorKind::ParallelLines: return "parallel lines";
    case ErrorKind::UndefinedCriticalPoint: return "undefined critical point";
  }
  return "unknown error";
}

}  // namespace dpemp
