#pragma once
#include <stdexcept>
#include <string>

namespace ntst {

/// Malformed caller-supplied data (bad ids, bad weights, bad file contents).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A documented precondition of an operation was violated.
struct PreconditionError : std::logic_error {
  explicit PreconditionError(const std::string& msg) : std::logic_error(msg) {}
};

/// An internal consistency check failed; indicates a bug, never bad input.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

/// Parse failure with a 1-based line number.
struct ParseError : InputError {
  int line;
  ParseError(int line_, const std::string& msg)
      : InputError("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw PreconditionError(msg);
}
inline void internalCheck(bool cond, const char* msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace ntst
