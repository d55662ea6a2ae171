#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tlfreq {

/// Every failure raised by the library carries a stable machine-readable
/// code (e.g. "WindowOutOfDomain") next to the human message. The CLI maps
/// codes to exit statuses and prints them as `error[CODE]: message`.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace tlfreq
