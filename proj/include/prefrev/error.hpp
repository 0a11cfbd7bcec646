// Error types shared by all prefrev modules.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prefrev {

enum class ErrorCode {
  kSyntax,
  kSort,
  kDuplicateName,
  kUnknownSort,
  kUnknownName,
  kDecisionCap,
  kModelCap,
  kBaseCap,
  kLinearizationCap,
  kSizeGuard,
  kEmptyIntersection,
  kUndefined,
  kIterationLimit,
  kIo,
  kSession,
  kCommand,
  kInternal,
};

/// Stable identifier used in CLI output, e.g. "E_SYNTAX".
std::string_view error_code_name(ErrorCode code);

/// Coarse class of an error, mapped onto CLI exit codes.
enum class ErrorClass { kEngine = 1, kParse = 2, kResource = 3 };

ErrorClass error_class(ErrorCode code);

struct SourceLocation {
  std::size_t line = 0;    // 1-based, 0 if unknown
  std::size_t column = 0;  // 1-based, 0 if unknown
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, SourceLocation where = {})
      : std::runtime_error(format(message, where)), code_(code), where_(where) {}

  ErrorCode code() const noexcept { return code_; }
  const SourceLocation& where() const noexcept { return where_; }

 private:
  static std::string format(const std::string& message, SourceLocation where) {
    if (where.line == 0) return message;
    return std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + message;
  }

  ErrorCode code_;
  SourceLocation where_;
};

/// A cap was exceeded during an enumeration; carries whatever was produced before the cap tripped.
template <typename T>
class Overflow : public Error {
 public:
  Overflow(ErrorCode code, const std::string& message, std::vector<T> partial)
      : Error(code, message), partial_(std::move(partial)) {}

  const std::vector<T>& partial() const noexcept { return partial_; }

 private:
  std::vector<T> partial_;
};

}  // namespace prefrev
