#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace sparsestream {

enum class ErrorKind {
  MalformedLine,
  TurnstileViolation,
  IdOutOfRange,
  DeletionBudgetExceeded,
  InvalidShapeParams,
  NegativeEdgeCount,
  EpsilonOutOfRange,
  DomainViolation,
  CoordinateOutOfRange,
  IncompatibleSketch,
  CorruptSketch,
  DeletionUnsupported,
  IncompatibleStreamModel,
  AllInstancesAborted,
  CounterOverflowAbort,
  EmptyInput,
  NotAForest,
  IsolatedVertices,
  AdjacentPair,
  TooLarge,
  InvalidArgument,
  ReplayAborted,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library. The kind says which contract was
/// broken; callers that need to branch (e.g. the CLI exit codes) switch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures carry the 1-based line they were detected on.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, const std::string& what)
      : Error(kind, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised by replay() when a consumer asks to stop.
class ReplayAborted : public Error {
 public:
  ReplayAborted(std::string reason, int pass, std::size_t delivered)
      : Error(ErrorKind::ReplayAborted, reason),
        reason_(std::move(reason)),
        pass_(pass),
        delivered_(delivered) {}

  const std::string& reason() const noexcept { return reason_; }
  int pass() const noexcept { return pass_; }
  std::size_t delivered() const noexcept { return delivered_; }

 private:
  std::string reason_;
  int pass_;
  std::size_t delivered_;
};

}  // namespace sparsestream
