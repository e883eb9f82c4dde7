#pragma once

#include <stdexcept>
#include <string>

namespace netmoments {

enum class ErrorCode {
  invalid_argument = 1,
  parse = 2,
  io = 3,
  overflow = 4,
  empty_slice = 5,
  degenerate = 6,
};

/// Exception type thrown by every library entry point. The code maps
/// one-to-one onto the status values of the C interface.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::invalid_argument, what);
}

}  // namespace netmoments
