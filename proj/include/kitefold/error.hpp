#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kitefold {

enum class ErrorCode {
  CollinearInput,
  SelfIntersecting,
  HoleOutsideOuter,
  DegenerateArea,
  DuplicateVertex,
  NotSimple,
  PlacementFailed,
  NonTangentContact,
  DegenerateGap,
  NotCocircular,
  GeometryError,
  DisconnectedDual,
  NoBoundaryKite,
  TraceIncomplete,
  ParameterOutOfRange,
  AreaOutOfRange,
  AreaMismatch,
  NotScalene,
  ParseError,
  IoError,
  VerificationFailed,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure in the library is reported through this type. The code is
/// stable and is what the CLI maps to exit statuses; the message carries
/// context (stage name, offending index, deviation) for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code), message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace kitefold
