#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gapcert {

// Library error carrying a stable machine-readable code next to the message.
// Codes in use: DOMAIN, INFEASIBLE, SIZE, RANGE, NO_MINORIZATION,
// NOT_CONTRACTING, BREAKPOINT_OVERFLOW, PARSE.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& what) {
  throw Error(std::move(code), what);
}

inline void require(bool cond, const char* code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace gapcert
