#pragma once

#include <stdexcept>
#include <string>

namespace scamgraph {

enum class ErrorCode {
  MalformedAddress,
  MalformedEvent,
  NonMonotonicPoolEvents,
  UnknownPoolReference,
  MalformedData,
  Transport,
  RateLimited,
  InconsistentResponse,
  SchemaVersionMismatch,
  CorruptLine,
  InfeasibleSpec,
  ParseFailure,
  InsufficientContracts,
  PoolNotInCluster,
  NodeBudgetExceeded,
  InvalidConfig,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::MalformedAddress: return "MalformedAddress";
    case ErrorCode::MalformedEvent: return "MalformedEvent";
    case ErrorCode::NonMonotonicPoolEvents: return "NonMonotonicPoolEvents";
    case ErrorCode::UnknownPoolReference: return "UnknownPoolReference";
    case ErrorCode::MalformedData: return "MalformedData";
    case ErrorCode::Transport: return "Transport";
    case ErrorCode::RateLimited: return "RateLimited";
    case ErrorCode::InconsistentResponse: return "InconsistentResponse";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::CorruptLine: return "CorruptLine";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::ParseFailure: return "ParseFailure";
    case ErrorCode::InsufficientContracts: return "InsufficientContracts";
    case ErrorCode::PoolNotInCluster: return "PoolNotInCluster";
    case ErrorCode::NodeBudgetExceeded: return "NodeBudgetExceeded";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Every failure the library raises carries one of the codes above.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace scamgraph
