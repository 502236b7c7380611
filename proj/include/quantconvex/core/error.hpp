#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qc {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorCode {
  precondition,  // input violates a documented precondition
  dimension,     // mismatched or unsupported ambient dimension
  parse,         // malformed scalar or JSON input
  unsupported,   // body family / mode outside the supported range
  budget,        // enumeration or approximation budget exhausted
  internal       // broken invariant inside the library
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::dimension: return "dimension";
    case ErrorCode::parse: return "parse";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::budget: return "budget";
    case ErrorCode::internal: return "internal";
  }
  return "internal";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace qc
