#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace campanato {

enum class ErrorKind {
  invalid_grid,
  invalid_cube,
  unsupported_cube,
  unsupported_dilation,
  incompatible_space,
  invalid_space,
  invalid_spec,
  numeric_overflow,
  numeric_failure,
  undefined_ratio,
  contract_violation,
  parse,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so the
// CLI can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  bool numeric() const noexcept {
    return kind_ == ErrorKind::numeric_overflow || kind_ == ErrorKind::numeric_failure;
  }

 private:
  ErrorKind kind_;
};

}  // namespace campanato
