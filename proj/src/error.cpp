#include "biauto/error.hpp"

namespace biauto {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Precondition: return "precondition error";
    case ErrorKind::Structural: return "structural error";
    case ErrorKind::Resource: return "resource error";
  }
  return "error";
}

}  // namespace biauto
