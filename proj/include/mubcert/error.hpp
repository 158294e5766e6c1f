#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mubcert {

enum class ErrorCode {
  NotHermitian,
  NotPsd,
  NotComplete,
  DimMismatch,
  InvalidDim,
  EtaOutOfRange,
  DegenerateSample,
  InvalidParams,
  NotADistribution,
  OutOfRange,
  NontrivialRegionRequired,
  DegenerateDenominator,
  ParseError,
  IoError,
  UnknownSuite,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as this exception; `code()` says which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mubcert
