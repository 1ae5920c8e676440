#pragma once

#include <stdexcept>
#include <string>

namespace tmkit {

/// Error raised by toolkit operations. `code()` carries a stable short
/// identifier ("empty-region", "non-finite", ...) that callers and the CLI
/// match on; `what()` carries a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace tmkit
