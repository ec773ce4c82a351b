#include "mvcs/error.hpp"

namespace mvcs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::MalformedManifest: return "MalformedManifest";
    case ErrorCode::MalformedData: return "MalformedData";
    case ErrorCode::RowCountMismatch: return "RowCountMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::InvalidLabels: return "InvalidLabels";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SingleView: return "SingleView";
    case ErrorCode::MTooLarge: return "MTooLarge";
    case ErrorCode::DerangementImpossible: return "DerangementImpossible";
    case ErrorCode::MissingLabels: return "MissingLabels";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace mvcs
