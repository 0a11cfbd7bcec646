#include "prefrev/error.hpp"

#include <cstdlib>
#include <string>

#include "prefrev/limits.hpp"

namespace prefrev {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "E_SYNTAX";
    case ErrorCode::kSort: return "E_SORT";
    case ErrorCode::kDuplicateName: return "E_DUPLICATE_NAME";
    case ErrorCode::kUnknownSort: return "E_UNKNOWN_SORT";
    case ErrorCode::kUnknownName: return "E_UNKNOWN_NAME";
    case ErrorCode::kDecisionCap: return "E_CAP_DECISIONS";
    case ErrorCode::kModelCap: return "E_CAP_MODELS";
    case ErrorCode::kBaseCap: return "E_CAP_BASES";
    case ErrorCode::kLinearizationCap: return "E_CAP_LINEARIZATIONS";
    case ErrorCode::kSizeGuard: return "E_SIZE_GUARD";
    case ErrorCode::kEmptyIntersection: return "E_EMPTY_INTERSECTION";
    case ErrorCode::kUndefined: return "E_UNDEFINED";
    case ErrorCode::kIterationLimit: return "E_ITERATION_LIMIT";
    case ErrorCode::kIo: return "E_IO";
    case ErrorCode::kSession: return "E_SESSION";
    case ErrorCode::kCommand: return "E_COMMAND";
    case ErrorCode::kInternal: return "E_INTERNAL";
  }
  return "E_INTERNAL";
}

ErrorClass error_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax:
    case ErrorCode::kSort:
    case ErrorCode::kDuplicateName:
    case ErrorCode::kUnknownSort:
    case ErrorCode::kUnknownName:
    case ErrorCode::kCommand:
      return ErrorClass::kParse;
    case ErrorCode::kDecisionCap:
    case ErrorCode::kModelCap:
    case ErrorCode::kBaseCap:
    case ErrorCode::kLinearizationCap:
    case ErrorCode::kSizeGuard:
    case ErrorCode::kIterationLimit:
      return ErrorClass::kResource;
    default:
      return ErrorClass::kEngine;
  }
}

namespace {

void read_cap(const char* variable, std::uint64_t& target) {
  const char* raw = std::getenv(variable);
  if (raw == nullptr || *raw == '\0') return;
  char* end = nullptr;
  unsigned long long value = std::strtoull(raw, &end, 10);
  if (end != nullptr && *end == '\0' && value > 0) target = value;
}

}  // namespace

Limits Limits::from_environment() {
  Limits limits;
  read_cap("PREFREV_MAX_MODELS", limits.max_models);
  read_cap("PREFREV_MAX_DECISIONS", limits.max_decisions);
  read_cap("PREFREV_MAX_BASES", limits.max_bases);
  read_cap("PREFREV_MAX_LINEARIZATIONS", limits.max_linearizations);
  return limits;
}

}  // namespace prefrev
