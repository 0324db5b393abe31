#pragma once

#include <stdexcept>
#include <string>

namespace biplane {

/// Failure categories. The CLI maps them to distinct exit codes.
enum class ErrorKind {
  Impossible,    // the requested object provably does not exist (wheel, fan, n = 13, ...)
  Precondition,  // input violates an operation's documented precondition
  Internal,      // an internal invariant broke; always a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::Precondition, what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::Internal, what);
}

}  // namespace biplane
