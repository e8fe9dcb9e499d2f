#ifndef CSIM_ERRORS_HPP
#define CSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace csim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or undecodable trace input.
class TraceError : public Error {
 public:
  enum class Kind { BadMagic, BadVersion, Truncated, BadKind, Io };
  TraceError(Kind k, const std::string& msg) : Error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Synthetic-trace spec violates a generator precondition.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// Degenerate simulation input (e.g. empty trace).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A hard verification failure: state budget exceeded or a dirty
// writeback bypassed at the LLC. Aborts the run.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

class CheckpointError : public Error {
 public:
  enum class Kind { VersionMismatch, Corrupt, FingerprintMismatch };
  CheckpointError(Kind k, const std::string& msg) : Error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class MetricsError : public Error {
 public:
  enum class Kind { InvalidBaseline, EmptyInput, NonPositive };
  MetricsError(Kind k, const std::string& msg) : Error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// External-mutator plumbing failures. Never fatal to an evolution run.
class AgentError : public Error {
 public:
  enum class Kind { Unavailable, MalformedProposal };
  AgentError(Kind k, const std::string& msg) : Error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace csim

#endif
