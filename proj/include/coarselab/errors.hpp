#pragma once

#include <stdexcept>
#include <string>

namespace coarselab {

enum class ErrorCode {
  invalid_config,
  bound_exceeded,
  unbounded_window,
  window_too_large,
  ball_too_large,
  too_long_sequence,
  index_out_of_range,
  scan_exhausted,
  candidates_insufficient,
  empty_interior,
  wrong_group,
};

const char* error_code_name(ErrorCode code);

/// Every recoverable failure surfaces as Error; code() drives the CLI
/// exit-code contract (could-not-run vs ran-and-found-a-violation).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace coarselab
