#include "mubcert/error.hpp"

namespace mubcert {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::InvalidDim: return "InvalidDim";
    case ErrorCode::EtaOutOfRange: return "EtaOutOfRange";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NotADistribution: return "NotADistribution";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NontrivialRegionRequired: return "NontrivialRegionRequired";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

}  // namespace mubcert
