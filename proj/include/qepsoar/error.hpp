#pragma once

#include <stdexcept>
#include <string>

namespace qepsoar {

enum class ErrorKind {
  ZeroVector,
  NoConvergence,
  SingularPivot,
  ZeroMu,
  ZeroStart,
  SingularMassMatrix,
  RankDeficient,
  ZeroResidualRow,
  InvalidTruncation,
  InvalidConfig,
  InvalidInput,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every recoverable failure in the library is reported through this type;
/// callers branch on kind() rather than on the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularPivot: return "SingularPivot";
    case ErrorKind::ZeroMu: return "ZeroMu";
    case ErrorKind::ZeroStart: return "ZeroStart";
    case ErrorKind::SingularMassMatrix: return "SingularMassMatrix";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::ZeroResidualRow: return "ZeroResidualRow";
    case ErrorKind::InvalidTruncation: return "InvalidTruncation";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace qepsoar
