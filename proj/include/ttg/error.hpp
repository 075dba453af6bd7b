#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ttg {

// Domain error carrying a stable machine-readable code such as
// "E_NOT_PGROUP_QUOTIENT". The CLI maps these to exit code 1 and prints
// "<code>: <message>" on stderr.
class error : public std::runtime_error {
 public:
  error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Grammar error raised while parsing user-facing text (group specs, element
// tuples, selectors, family literals). Maps to CLI exit code 2.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& message)
      : std::runtime_error(message) {}
};

[[noreturn]] inline void fail(const char* code, const std::string& message) {
  throw error(code, message);
}

}  // namespace ttg
