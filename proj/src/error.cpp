#include "campanato/error.hpp"

namespace campanato {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_grid: return "invalid grid";
    case ErrorKind::invalid_cube: return "invalid cube";
    case ErrorKind::unsupported_cube: return "unsupported cube";
    case ErrorKind::unsupported_dilation: return "unsupported dilation";
    case ErrorKind::incompatible_space: return "incompatible space";
    case ErrorKind::invalid_space: return "invalid space";
    case ErrorKind::invalid_spec: return "invalid spec";
    case ErrorKind::numeric_overflow: return "numeric overflow";
    case ErrorKind::numeric_failure: return "numeric failure";
    case ErrorKind::undefined_ratio: return "undefined ratio";
    case ErrorKind::contract_violation: return "contract violation";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::io: return "io error";
  }
  return "error";
}

}  // namespace campanato
