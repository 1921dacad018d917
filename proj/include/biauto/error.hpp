#pragma once

#include <stdexcept>
#include <string>

namespace biauto {

enum class ErrorKind {
  Input,         // malformed or out-of-domain user input
  Parse,         // structure file syntax
  Precondition,  // operation called outside its contract
  Structural,    // the structure violates a property the construction relies on
  Resource,      // a configured search bound or cap was exceeded
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace biauto
