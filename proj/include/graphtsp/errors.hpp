#pragma once

#include <stdexcept>
#include <string>

namespace graphtsp {

/// Failure categories surfaced to callers (the CLI maps these to exit codes).
enum class errc {
  invalid_input,
  disconnected,
  bridge_found,
  degree_violation,
  budget_exceeded,
  no_perfect_matching,
  bad_certificate,
};

class solver_error : public std::runtime_error {
 public:
  solver_error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw solver_error(code, what);
}

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace graphtsp
